#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "eslab/dqn/checkpoint.hpp"
#include "eslab/harness/bench.hpp"
#include "eslab/harness/config.hpp"
#include "eslab/harness/csv.hpp"
#include "eslab/harness/digest.hpp"
#include "eslab/harness/svg.hpp"
#include "eslab/harness/threadpool.hpp"
#include "eslab/oracle.hpp"
#include "eslab/policies.hpp"
#include "eslab/timeutil.hpp"
#include "eslab/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eslab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;    // bad flags, config, or inputs
constexpr int kExitNumeric = 3;  // training divergence

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cli::RunConfig load_config_or_fail(const std::string& path) {
  try {
    return cli::load_run_config(path);
  } catch (const cli::ConfigError& e) {
    throw UsageFailure(e.what());
  }
}

json meta_common(const std::string& command, const cli::RunConfig& cfg,
                 std::uint64_t seed) {
  json meta;
  meta["command"] = command;
  meta["created_utc"] = utc_timestamp();
  meta["seed"] = seed;
  meta["resolved_config"] = cli::to_json(cfg);
  meta["config_digest"] = cli::config_digest(cfg);
  return meta;
}

int run_train(const std::string& config_path, const std::string& xapp,
              const std::string& out_dir, std::uint64_t seed,
              const std::string& preset) {
  cli::RunConfig cfg = load_config_or_fail(config_path);
  if (!preset.empty()) {
    try {
      train::apply_preset(cfg.dqn, preset);
    } catch (const std::invalid_argument& e) {
      throw UsageFailure(e.what());
    }
  }
  train::TrainConfig tcfg = cfg.trainer_config();
  tcfg.encoding = mdp::state_variant_from_string(xapp);
  tcfg.seed = seed;

  fs::create_directories(out_dir);
  const std::string digest = cli::config_digest(cfg);
  const dqn::CheckpointMeta ckpt_meta{utc_timestamp(), digest,
                                      mdp::to_string(tcfg.encoding)};

  train::TrainHooks hooks;
  hooks.on_checkpoint = [&](const dqn::QNetwork<float>& net, int episode) {
    char name[64];
    std::snprintf(name, sizeof(name), "checkpoint_ep%06d.json", episode + 1);
    dqn::save_checkpoint((fs::path(out_dir) / name).string(), net, ckpt_meta);
  };

  std::cerr << "training " << xapp << " for " << tcfg.episodes
            << " episodes x " << tcfg.steps_per_episode << " steps (seed "
            << seed << ")\n";
  const auto result = train::train(cfg.network, tcfg, hooks);

  cli::write_text_file((fs::path(out_dir) / "train_log.csv").string(),
                       cli::train_log_csv(result.log));

  json meta = meta_common("train", cfg, seed);
  meta["xapp"] = xapp;
  meta["preset"] = preset.empty() ? "none" : preset;
  meta["encoding_variant"] = mdp::to_string(tcfg.encoding);
  meta["episodes_completed"] = result.log.records.size();
  meta["diverged"] = result.stats.diverged;
  meta["env_steps"] = result.stats.env_steps;
  meta["gradient_steps"] = result.stats.gradient_steps;
  meta["target_syncs"] = result.stats.target_syncs;
  meta["first_gradient_step"] = result.stats.first_gradient_step;
  meta["grad_clip_used"] = tcfg.grad_clip_norm > 0.0;
  cli::write_text_file((fs::path(out_dir) / "meta.json").string(),
                       meta.dump(2) + "\n");

  if (result.stats.diverged) {
    std::cerr << "training diverged; last scheduled checkpoint retained\n";
    throw NumericFailure("non-finite loss during training");
  }
  dqn::save_checkpoint((fs::path(out_dir) / "model.json").string(), result.net,
                       ckpt_meta);
  std::cerr << "wrote " << out_dir << "/model.json\n";
  return kExitOk;
}

int run_eval(const std::string& model_path, const std::string& config_path,
             int episodes, std::uint64_t seed, const std::string& csv_path) {
  cli::RunConfig cfg = load_config_or_fail(config_path);
  dqn::Checkpoint ckpt;
  try {
    ckpt = dqn::load_checkpoint(model_path);
  } catch (const std::runtime_error& e) {
    throw UsageFailure(e.what());
  }
  mdp::StateEncoding encoding;
  try {
    encoding = mdp::make_encoding(
        mdp::state_variant_from_string(ckpt.meta.encoding_variant),
        cfg.network);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(std::string("checkpoint: ") + e.what());
  }
  if (episodes < 0) episodes = cfg.eval.episodes;

  train::EvalReport report;
  try {
    report = train::evaluate_policy(ckpt.net, encoding, cfg.network,
                                    cfg.reward, episodes,
                                    cfg.dqn.steps_per_episode, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(e.what());
  }
  cli::write_text_file(csv_path, cli::eval_csv(report));
  std::cerr << "evaluated " << episodes << " episodes: mean off ratio "
            << cli::fmt_double(report.mean_off_ratio())
            << ", violation-free fraction "
            << cli::fmt_double(report.violation_free_fraction()) << "\n";
  return kExitOk;
}

int run_bench(const std::string& config_path, const std::string& policies_arg,
              const std::string& ue_counts_arg, int sims, std::uint64_t seed,
              const std::string& csv_path, const std::string& svg_path,
              const std::string& models_dir, bool with_oracle) {
  cli::RunConfig cfg = load_config_or_fail(config_path);

  cli::BenchOptions options;
  options.sims = sims > 0 ? sims : cfg.bench.sims;
  options.seed = seed;
  options.max_ticks = cfg.dqn.steps_per_episode;
  options.with_oracle = with_oracle;
  options.threads = cli::resolve_thread_count();

  std::vector<std::string> policy_names = cfg.bench.policies;
  if (!policies_arg.empty()) {
    policy_names.clear();
    std::stringstream ss(policies_arg);
    std::string item;
    while (std::getline(ss, item, ',')) policy_names.push_back(item);
  }
  for (const auto& name : policy_names) {
    try {
      options.policies.push_back(policy::policy_kind_from_string(name));
    } catch (const std::invalid_argument& e) {
      throw UsageFailure(e.what());
    }
  }

  options.ue_counts = cfg.bench.ue_counts;
  if (!ue_counts_arg.empty()) {
    options.ue_counts.clear();
    std::stringstream ss(ue_counts_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        options.ue_counts.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw UsageFailure("bench: bad --ue-counts entry \"" + item + "\"");
      }
    }
  }

  if (with_oracle && cfg.network.num_rcs() > oracle::kMaxOracleRcs)
    throw UsageFailure("bench: --oracle needs M <= " +
                       std::to_string(oracle::kMaxOracleRcs));

  // Load every needed checkpoint up front; report all gaps at once.
  std::map<std::pair<policy::PolicyKind, int>, dqn::QNetwork<float>> models;
  std::string missing;
  for (policy::PolicyKind kind : options.policies) {
    if (!policy::is_dqn(kind)) continue;
    const char* tag = kind == policy::PolicyKind::kDqnEs1 ? "es1" : "es2";
    for (int k : options.ue_counts) {
      const fs::path path = fs::path(models_dir) /
                            (std::string(tag) + "_k" + std::to_string(k) +
                             ".json");
      if (!fs::exists(path)) {
        missing += "\n  " + path.string();
        continue;
      }
      try {
        models.emplace(std::make_pair(kind, k),
                       dqn::load_checkpoint(path.string()).net);
      } catch (const std::runtime_error& e) {
        throw UsageFailure(e.what());
      }
    }
  }
  if (!missing.empty())
    throw UsageFailure("bench: missing checkpoints under \"" + models_dir +
                       "\":" + missing);

  const auto lookup = [&](policy::PolicyKind kind,
                          int k) -> const dqn::QNetwork<float>* {
    const auto it = models.find({kind, k});
    return it == models.end() ? nullptr : &it->second;
  };

  std::vector<cli::BenchCell> cells;
  try {
    cells = cli::run_bench(cfg.network, cfg.reward, options, lookup);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(e.what());
  }
  cli::write_text_file(csv_path, cli::bench_csv(cells));
  if (!svg_path.empty())
    cli::write_text_file(svg_path, cli::svg_bench_chart(cells));
  std::cerr << "bench: wrote " << cells.size() << " cells to " << csv_path
            << "\n";
  return kExitOk;
}

int run_oracle(const std::string& config_path, int layouts,
               const std::string& mode_arg, std::uint64_t seed,
               const std::string& csv_path) {
  cli::RunConfig cfg = load_config_or_fail(config_path);
  oracle::OracleMode mode;
  try {
    mode = oracle::oracle_mode_from_string(mode_arg);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(e.what());
  }
  if (cfg.network.num_rcs() > oracle::kMaxOracleRcs)
    throw UsageFailure("oracle: M = " + std::to_string(cfg.network.num_rcs()) +
                       " exceeds the enumeration guard (" +
                       std::to_string(oracle::kMaxOracleRcs) + ")");

  std::vector<cli::OracleCsvRow> rows;
  rows.reserve(layouts);
  for (int i = 0; i < layouts; ++i) {
    const std::uint64_t layout_seed =
        derive_seed(seed, stream::kOracle, static_cast<std::uint64_t>(i));
    Rng rng(layout_seed);
    const auto layout = net::sample_layout(cfg.network, rng);
    const auto result = oracle::oracle_max_off(cfg.network, layout, mode);
    cli::OracleCsvRow row;
    row.layout_seed = layout_seed;
    row.mode = oracle::to_string(mode);
    row.max_off = result.max_off;
    row.feasible_count = result.feasible_count;
    for (std::uint8_t f : result.argmax_flags)
      row.flags_bitstring.push_back(f ? '1' : '0');
    rows.push_back(std::move(row));
  }
  cli::write_text_file(csv_path, cli::oracle_csv(rows));
  std::cerr << "oracle: wrote " << rows.size() << " rows to " << csv_path
            << "\n";
  return kExitOk;
}

int run_plot(const std::string& log_path, int window,
             const std::string& svg_path) {
  cli::ParsedTrainLog log;
  try {
    log = cli::parse_train_log_csv(log_path);
  } catch (const std::runtime_error& e) {
    throw UsageFailure(e.what());
  }
  if (window < 1) throw UsageFailure("plot: --window must be >= 1");

  const auto ma_series = [&](const std::vector<double>& xs,
                             const std::vector<double>& ys,
                             const std::string& label) {
    cli::LineSeries s;
    s.label = label;
    // Episodes whose log recorded no value (NaN) are skipped.
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (std::isfinite(ys[i])) {
        fx.push_back(xs[i]);
        fy.push_back(ys[i]);
      }
    }
    if (fy.empty()) return s;
    if (window > static_cast<int>(fy.size())) {
      std::cerr << "plot: window " << window << " exceeds series length "
                << fy.size() << "; emitting a single averaged point\n";
      double sum = 0.0;
      for (double y : fy) sum += y;
      s.xs.push_back(fx.back());
      s.ys.push_back(sum / static_cast<double>(fy.size()));
      return s;
    }
    s.xs = fx;
    s.ys = train::TrainLog::moving_average(fy, window);
    return s;
  };

  const std::string title = "window " + std::to_string(window);
  const auto reward = ma_series(log.episodes, log.mean_reward,
                                "reward MA (" + title + ")");
  const auto loss =
      ma_series(log.episodes, log.mean_loss, "loss MA (" + title + ")");
  cli::write_text_file(svg_path, cli::svg_train_curves({reward}, {loss}));
  std::cerr << "plot: wrote " << svg_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Desk-scale O-RAN energy-saving lab: DQN training, baseline policies, "
      "exhaustive switch-off oracle, benchmarking"};
  app.require_subcommand(1);

  std::string config_path, xapp = "es1", out_dir = "run", preset;
  std::uint64_t seed = 0;

  auto* train_cmd =
      app.add_subcommand("train", "Train an ES-xApp and write checkpoints");
  train_cmd->add_option("--config", config_path, "Run config JSON")->required();
  train_cmd->add_option("--xapp", xapp, "es1 (RSS+geo) or es2 (RSS only)")
      ->check(CLI::IsMember({"es1", "es2"}));
  train_cmd->add_option("--out", out_dir, "Output directory")->required();
  train_cmd->add_option("--seed", seed, "Run seed")->required();
  train_cmd->add_option("--preset", preset, "desk or paper episode budget")
      ->check(CLI::IsMember({"desk", "paper"}));

  std::string model_path, csv_path = "eval.csv";
  int episodes = -1;
  auto* eval_cmd =
      app.add_subcommand("eval", "Greedy evaluation of a trained checkpoint");
  eval_cmd->add_option("--model", model_path, "Checkpoint JSON")->required();
  eval_cmd->add_option("--config", config_path, "Run config JSON")->required();
  eval_cmd->add_option("--episodes", episodes,
                       "Episode count (default: eval.episodes from config)");
  eval_cmd->add_option("--seed", seed, "Run seed")->required();
  eval_cmd->add_option("--csv", csv_path, "Report CSV path")->required();

  std::string policies_arg, ue_counts_arg, svg_path, models_dir = ".";
  int sims = -1;
  bool with_oracle = false;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Fixed-point benchmark of policies over paired layouts");
  bench_cmd->add_option("--config", config_path, "Run config JSON")->required();
  bench_cmd->add_option("--policies", policies_arg,
                        "Comma list (default: bench.policies from config)");
  bench_cmd->add_option("--ue-counts", ue_counts_arg,
                        "Comma list (default: bench.ue_counts from config)");
  bench_cmd->add_option("--sims", sims, "Simulations per cell");
  bench_cmd->add_option("--seed", seed, "Run seed")->required();
  bench_cmd->add_option("--csv", csv_path, "Report CSV path")->required();
  bench_cmd->add_option("--svg", svg_path, "Optional grouped bar chart");
  bench_cmd->add_option("--models", models_dir,
                        "Directory holding {es1|es2}_k{K}.json checkpoints");
  bench_cmd->add_flag("--oracle", with_oracle,
                      "Add the ASSOC-mode oracle column");

  int layouts = 50;
  std::string mode_arg = "assoc";
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Exhaustive maximum switch-off per random layout");
  oracle_cmd->add_option("--config", config_path, "Run config JSON")
      ->required();
  oracle_cmd->add_option("--layouts", layouts, "Number of random layouts");
  oracle_cmd->add_option("--mode", mode_arg, "assoc or matching")
      ->check(CLI::IsMember({"assoc", "matching"}));
  oracle_cmd->add_option("--seed", seed, "Run seed")->required();
  oracle_cmd->add_option("--csv", csv_path, "Report CSV path")->required();

  std::string log_path;
  int window = 50;
  auto* plot_cmd = app.add_subcommand(
      "plot", "Moving-average reward/loss curves from a training log");
  plot_cmd->add_option("--train-log", log_path, "train_log.csv path")
      ->required();
  plot_cmd->add_option("--window", window, "Sliding window width");
  plot_cmd->add_option("--svg", svg_path, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train_cmd->parsed())
      return run_train(config_path, xapp, out_dir, seed, preset);
    if (eval_cmd->parsed())
      return run_eval(model_path, config_path, episodes, seed, csv_path);
    if (bench_cmd->parsed())
      return run_bench(config_path, policies_arg, ue_counts_arg, sims, seed,
                       csv_path, svg_path, models_dir, with_oracle);
    if (oracle_cmd->parsed())
      return run_oracle(config_path, layouts, mode_arg, seed, csv_path);
    if (plot_cmd->parsed()) return run_plot(log_path, window, svg_path);
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const dqn::TrainingDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
