#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "eslab/mdp_env.hpp"
#include "eslab/netmodel.hpp"
#include "eslab/trainer.hpp"

namespace eslab::cli {

/// Configuration problems carry a human-readable location; the CLI maps
/// them to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct EvalSection {
  int episodes = 50;
};

struct BenchSection {
  std::vector<std::string> policies = {"dqn-es1", "dqn-es2",
                                       "heuristic-standin", "baseline"};
  std::vector<int> ue_counts = {10, 20, 30, 50};
  int sims = 50;
};

/// One resolved run configuration: every field has a default mirroring the
/// published table, a JSON file overrides selectively, unknown keys are
/// rejected.
struct RunConfig {
  net::NetworkConfig network;
  mdp::RewardWeights reward = mdp::RewardWeights::objective_consistent();
  train::TrainConfig dqn;
  EvalSection eval;
  BenchSection bench;

  train::TrainConfig trainer_config() const {
    train::TrainConfig t = dqn;
    t.reward_mode = reward.mode;
    return t;
  }
};

RunConfig default_run_config();

/// Loads and validates a config file over the defaults. Unknown keys and
/// malformed values raise ConfigError with the offending location.
RunConfig load_run_config(const std::string& path);

/// Canonical JSON of the fully resolved configuration (sorted keys); the
/// digest of this document identifies a run setup.
nlohmann::json to_json(const RunConfig& cfg);

std::string config_digest(const RunConfig& cfg);

}  // namespace eslab::cli
