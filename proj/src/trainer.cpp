#include "eslab/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace eslab::train {

void TrainConfig::validate() const {
  if (episodes < 1) throw std::invalid_argument("train: episodes must be >= 1");
  if (steps_per_episode < 1)
    throw std::invalid_argument("train: steps_per_episode must be >= 1");
  if (batch_size < 1)
    throw std::invalid_argument("train: batch_size must be >= 1");
  if (buffer_capacity < batch_size)
    throw std::invalid_argument("train: buffer_capacity must fit a batch");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("train: gamma must lie in [0, 1)");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("train: learning_rate must be positive");
  if (target_sync_every < 1)
    throw std::invalid_argument("train: target_sync_every must be >= 1");
  if (eps_decay_steps < 0)
    throw std::invalid_argument("train: eps_decay_steps must be >= 0");
  if (!(eps_start >= eps_end && eps_end >= 0.0 && eps_start <= 1.0))
    throw std::invalid_argument("train: need 1 >= eps_start >= eps_end >= 0");
  if (grad_clip_norm < 0.0)
    throw std::invalid_argument("train: grad_clip_norm must be >= 0");
  if (checkpoint_every < 0)
    throw std::invalid_argument("train: checkpoint_every must be >= 0");
  for (int h : hidden_dims)
    if (h < 1) throw std::invalid_argument("train: hidden dims must be >= 1");
}

long TrainConfig::resolved_eps_decay_steps() const {
  if (eps_decay_steps > 0) return eps_decay_steps;
  const long total = static_cast<long>(episodes) * steps_per_episode;
  return std::max<long>(1, total / 5);
}

std::vector<int> TrainConfig::layer_dims(int input_dim,
                                         int num_actions) const {
  std::vector<int> dims;
  dims.reserve(hidden_dims.size() + 2);
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(num_actions);
  return dims;
}

void apply_preset(TrainConfig& cfg, const std::string& preset) {
  if (preset == "desk") {
    cfg.episodes = 5000;
  } else if (preset == "paper") {
    cfg.episodes = 30000;
  } else {
    throw std::invalid_argument("unknown preset: " + preset);
  }
}

std::vector<double> TrainLog::moving_average(std::span<const double> series,
                                             int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window >= 1");
  std::vector<double> out;
  out.reserve(series.size());
  double running = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    running += series[i];
    if (i >= static_cast<std::size_t>(window)) running -= series[i - window];
    const double n = std::min<double>(window, static_cast<double>(i + 1));
    out.push_back(running / n);
  }
  return out;
}

TrainResult train(const net::NetworkConfig& net_cfg, const TrainConfig& cfg,
                  const TrainHooks& hooks) {
  cfg.validate();
  mdp::Env env(net_cfg, mdp::make_encoding(cfg.encoding, net_cfg),
               mdp::RewardWeights::for_mode(cfg.reward_mode),
               cfg.steps_per_episode);

  const auto dims = cfg.layer_dims(env.encoded_dim(), env.action_count());
  Rng init_rng(derive_seed(cfg.seed, stream::kInit));
  auto net = dqn::QNetwork<float>::random_init(dims, init_rng);
  dqn::TargetNetwork<float> target{net, 0};

  dqn::AdamWConfig opt_cfg;
  opt_cfg.learning_rate = cfg.learning_rate;
  opt_cfg.weight_decay = cfg.weight_decay;
  auto opt = dqn::AdamWState<float>::zeros_like(net);

  dqn::ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity));
  dqn::EpsilonSchedule eps{cfg.eps_start, cfg.eps_end,
                           cfg.resolved_eps_decay_steps()};
  Rng replay_rng(derive_seed(cfg.seed, stream::kReplay));

  TrainResult result;
  result.log.records.reserve(cfg.episodes);
  TrainStats& stats = result.stats;

  dqn::MiniBatch<float> batch;
  dqn::VectorX<float> state_vec;
  bool diverged = false;

  for (int episode = 0; episode < cfg.episodes && !diverged; ++episode) {
    Rng episode_rng(derive_seed(cfg.seed, stream::kEpisode,
                                static_cast<std::uint64_t>(episode)));
    std::vector<float> state = env.reset(episode_rng);

    double reward_sum = 0.0;
    double loss_sum = 0.0;
    long loss_count = 0;
    mdp::StepResult last_step;

    for (int t = 0; t < cfg.steps_per_episode; ++t) {
      const double eps_now = eps.at(stats.env_steps);
      state_vec = Eigen::Map<const dqn::VectorX<float>>(
          state.data(), static_cast<Eigen::Index>(state.size()));
      const int action =
          dqn::select_action(net, state_vec, eps_now, episode_rng);

      mdp::StepResult step = env.step(mdp::ActionIndex{action});
      reward_sum += step.reward.total;
      ++stats.env_steps;

      buffer.push(dqn::Transition{std::move(state), action,
                                  static_cast<float>(step.reward.total),
                                  step.next_state, step.terminal});
      stats.max_buffer_size = std::max(stats.max_buffer_size, buffer.size());
      state = step.next_state;
      last_step = std::move(step);

      const bool warm = cfg.warmup == WarmupRule::kBatchReady
                            ? buffer.size() >=
                                  static_cast<std::size_t>(cfg.batch_size)
                            : buffer.size() >= buffer.capacity();
      if (warm) {
        buffer.sample(cfg.batch_size, replay_rng, batch);
        try {
          const float loss = dqn::train_step(net, target, opt, opt_cfg, batch,
                                             cfg.gamma, cfg.grad_clip_norm);
          loss_sum += loss;
          ++loss_count;
        } catch (const dqn::TrainingDiverged&) {
          stats.diverged = true;
          diverged = true;
          break;
        }
        ++stats.gradient_steps;
        if (stats.first_gradient_step < 0)
          stats.first_gradient_step = stats.env_steps;
        if (stats.gradient_steps % cfg.target_sync_every == 0) {
          dqn::sync_target(net, target);
          ++stats.target_syncs;
        }
      }
    }

    EpisodeRecord record;
    record.episode = episode;
    record.mean_reward = reward_sum / cfg.steps_per_episode;
    record.mean_loss = loss_count > 0
                           ? loss_sum / static_cast<double>(loss_count)
                           : std::numeric_limits<double>::quiet_NaN();
    record.final_off_count = last_step.off_count;
    record.rss_violations =
        static_cast<int>(last_step.report.unserved_ues.size());
    if (last_step.report.rss_ok == false &&
        last_step.report.unserved_ues.empty()) {
      // Served-but-below-threshold breaches; count affected UEs.
      int below = 0;
      const auto& st = env.state();
      for (int k = 0; k < st.num_ues(); ++k) {
        const int rc = st.association[k];
        if (rc != net::kNoAssociation &&
            st.rss_dbm(rc, k) < net_cfg.rss_min_dbm)
          ++below;
      }
      record.rss_violations += below;
    }
    record.capacity_violations =
        static_cast<int>(last_step.report.oversubscribed_rcs.size());
    record.epsilon = eps.at(stats.env_steps);
    result.log.records.push_back(record);
    if (hooks.on_episode) hooks.on_episode(record);

    const bool scheduled = cfg.checkpoint_every > 0 &&
                           (episode + 1) % cfg.checkpoint_every == 0;
    if (hooks.on_checkpoint && scheduled && !diverged)
      hooks.on_checkpoint(net, episode);
  }

  result.net = std::move(net);
  return result;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

// Sample standard deviation (n - 1); zero for fewer than two points.
double std_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double sq = 0.0;
  for (double x : xs) sq += (x - mu) * (x - mu);
  return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

std::vector<double> column(const std::vector<EvalEpisode>& eps,
                           double (*get)(const EvalEpisode&)) {
  std::vector<double> out;
  out.reserve(eps.size());
  for (const auto& e : eps) out.push_back(get(e));
  return out;
}

}  // namespace

double EvalReport::mean_off_count() const {
  return mean_of(column(episodes, [](const EvalEpisode& e) {
    return static_cast<double>(e.final_off_count);
  }));
}
double EvalReport::std_off_count() const {
  return std_of(column(episodes, [](const EvalEpisode& e) {
    return static_cast<double>(e.final_off_count);
  }));
}
double EvalReport::mean_off_ratio() const {
  return mean_of(
      column(episodes, [](const EvalEpisode& e) { return e.final_off_ratio; }));
}
double EvalReport::std_off_ratio() const {
  return std_of(
      column(episodes, [](const EvalEpisode& e) { return e.final_off_ratio; }));
}
double EvalReport::mean_reward() const {
  return mean_of(
      column(episodes, [](const EvalEpisode& e) { return e.mean_reward; }));
}
double EvalReport::std_reward() const {
  return std_of(
      column(episodes, [](const EvalEpisode& e) { return e.mean_reward; }));
}
double EvalReport::violation_free_fraction() const {
  if (episodes.empty()) return 0.0;
  int clean = 0;
  for (const auto& e : episodes)
    if (e.rss_violations == 0 && e.capacity_violations == 0) ++clean;
  return static_cast<double>(clean) / static_cast<double>(episodes.size());
}

EvalReport evaluate_policy(const dqn::QNetwork<float>& net,
                           const mdp::StateEncoding& encoding,
                           const net::NetworkConfig& net_cfg,
                           const mdp::RewardWeights& weights, int episodes,
                           int steps_per_episode, std::uint64_t seed) {
  mdp::Env env(net_cfg, encoding, weights, steps_per_episode);
  if (net.input_dim() != env.encoded_dim())
    throw std::invalid_argument(
        "evaluate: checkpoint input dim " + std::to_string(net.input_dim()) +
        " does not match encoded dim " + std::to_string(env.encoded_dim()));

  EvalReport report;
  report.episodes.reserve(episodes);
  dqn::VectorX<float> state_vec;
  for (int e = 0; e < episodes; ++e) {
    Rng rng(derive_seed(seed, stream::kEval, static_cast<std::uint64_t>(e)));
    std::vector<float> state = env.reset(rng);
    double reward_sum = 0.0;
    mdp::StepResult last;
    for (int t = 0; t < steps_per_episode; ++t) {
      state_vec = Eigen::Map<const dqn::VectorX<float>>(
          state.data(), static_cast<Eigen::Index>(state.size()));
      const int action = dqn::select_action(net, state_vec, 0.0, rng);
      last = env.step(mdp::ActionIndex{action});
      reward_sum += last.reward.total;
      state = std::move(last.next_state);
    }
    EvalEpisode row;
    row.episode = e;
    row.final_off_count = last.off_count;
    row.final_off_ratio =
        static_cast<double>(last.off_count) / env.config().num_rcs();
    row.rss_violations = static_cast<int>(last.report.unserved_ues.size());
    row.capacity_violations =
        static_cast<int>(last.report.oversubscribed_rcs.size());
    row.mean_reward = reward_sum / steps_per_episode;
    report.episodes.push_back(row);
  }
  return report;
}

}  // namespace eslab::train
