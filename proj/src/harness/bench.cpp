#include "eslab/harness/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>

#include "eslab/harness/threadpool.hpp"
#include "eslab/oracle.hpp"

namespace eslab::cli {

int resolve_thread_count() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap = std::getenv("ES_LAB_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(cap, &end, 10);
    if (end && *end == '\0' && parsed >= 1)
      threads = std::min<long>(threads, parsed);
  }
  return threads;
}

std::uint64_t bench_layout_seed(std::uint64_t seed, int num_ues, int sim) {
  return derive_seed(derive_seed(seed, stream::kBench,
                                 static_cast<std::uint64_t>(num_ues)),
                     static_cast<std::uint64_t>(sim));
}

SimOutcome run_policy_to_fixed_point(
    const net::NetworkConfig& cfg, const std::vector<net::RadioCard>& rcs,
    const net::UeLayout& layout, const mdp::RewardWeights& weights,
    policy::PolicyKind kind, const dqn::QNetwork<float>* net, int max_ticks) {
  const Eigen::MatrixXd rss = net::compute_rss_matrix(cfg, rcs, layout);
  net::NetworkState state = net::make_state(
      rss, std::vector<std::uint8_t>(cfg.num_rcs(), 1), cfg);

  const mdp::StateEncoding encoding = mdp::make_encoding(
      kind == policy::PolicyKind::kDqnEs2 ? mdp::StateVariant::kRssOnly
                                          : mdp::StateVariant::kRssAndGeo,
      cfg);

  std::set<std::vector<std::uint8_t>> seen;
  seen.insert(state.rc_flags);

  SimOutcome outcome;
  for (int tick = 0; tick < max_ticks; ++tick) {
    policy::FlagVec target;
    switch (kind) {
      case policy::PolicyKind::kBaseline:
        target = policy::baseline_decide(state, cfg);
        break;
      case policy::PolicyKind::kHeuristic:
        target = policy::heuristic_decide(state, cfg);
        break;
      case policy::PolicyKind::kAlwaysOn:
        target = policy::always_on_decide(state);
        break;
      case policy::PolicyKind::kDqnEs1:
      case policy::PolicyKind::kDqnEs2:
        if (!net)
          throw std::invalid_argument("bench: DQN policy without checkpoint");
        target = policy::dqn_decide(*net, encoding, state, layout);
        break;
    }
    if (target == state.rc_flags) break;  // fixed point
    state = net::make_state(rss, target, cfg);
    outcome.ticks = tick + 1;
    if (!seen.insert(state.rc_flags).second) break;  // cycle detected
  }

  const auto report = net::check_constraints(state, cfg);
  outcome.final_off_count = net::count_off(state.rc_flags);
  outcome.violated = !report.clean();
  outcome.final_reward = mdp::compute_reward(state, cfg, weights).total;
  return outcome;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double sq = 0.0;
  for (double x : xs) sq += (x - mu) * (x - mu);
  return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<BenchCell> run_bench(const net::NetworkConfig& base_cfg,
                                 const mdp::RewardWeights& weights,
                                 const BenchOptions& options,
                                 const DqnLookup& lookup) {
  if (options.sims < 1)
    throw std::invalid_argument("bench: sims must be >= 1");

  std::vector<BenchCell> cells;
  for (policy::PolicyKind kind : options.policies) {
    for (int k : options.ue_counts) {
      net::NetworkConfig cfg = base_cfg;
      cfg.num_ues = k;
      cfg.validate();
      const auto rcs = net::build_radio_cards(cfg);

      const dqn::QNetwork<float>* net_ptr = nullptr;
      if (policy::is_dqn(kind)) {
        net_ptr = lookup(kind, k);
        if (!net_ptr)
          throw std::invalid_argument(
              "bench: missing checkpoint for " + policy::to_string(kind) +
              " at num_ues=" + std::to_string(k));
      }

      std::vector<SimOutcome> outcomes(options.sims);
      std::vector<double> oracle_max(options.sims, 0.0);
      parallel_for(
          static_cast<std::size_t>(options.sims), options.threads,
          [&](std::size_t sim) {
            Rng layout_rng(
                bench_layout_seed(options.seed, k, static_cast<int>(sim)));
            const auto layout = net::sample_layout(cfg, layout_rng);
            outcomes[sim] =
                run_policy_to_fixed_point(cfg, rcs, layout, weights, kind,
                                          net_ptr, options.max_ticks);
            if (options.with_oracle) {
              const auto result =
                  oracle::oracle_max_off(cfg, layout, oracle::OracleMode::kAssoc);
              oracle_max[sim] = result.max_off;
            }
          });

      std::vector<double> offs, rewards;
      offs.reserve(options.sims);
      rewards.reserve(options.sims);
      int violated = 0;
      for (const auto& o : outcomes) {
        offs.push_back(o.final_off_count);
        rewards.push_back(o.final_reward);
        if (o.violated) ++violated;
      }

      BenchCell cell;
      cell.policy = policy::to_string(kind);
      cell.num_ues = k;
      cell.sims = options.sims;
      cell.mean_off_count = mean_of(offs);
      cell.std_off_count = sample_std(offs);
      cell.mean_off_ratio = cell.mean_off_count / cfg.num_rcs();
      {
        std::vector<double> ratios;
        ratios.reserve(offs.size());
        for (double o : offs) ratios.push_back(o / cfg.num_rcs());
        cell.std_off_ratio = sample_std(ratios);
      }
      cell.violation_rate =
          static_cast<double>(violated) / static_cast<double>(options.sims);
      cell.mean_final_reward = mean_of(rewards);
      if (options.with_oracle) {
        cell.has_oracle = true;
        cell.oracle_mean_max_off = mean_of(oracle_max);
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace eslab::cli
