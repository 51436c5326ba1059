#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "eslab/harness/csv.hpp"
#include "eslab/mdp_env.hpp"
#include "eslab/netmodel.hpp"
#include "eslab/policies.hpp"

namespace eslab::cli {

/// Layout stream for one bench simulation; identical for every policy so
/// comparisons are paired.
std::uint64_t bench_layout_seed(std::uint64_t seed, int num_ues, int sim);

struct BenchOptions {
  std::vector<policy::PolicyKind> policies;
  std::vector<int> ue_counts;
  int sims = 50;
  std::uint64_t seed = 0;
  int max_ticks = 100;  // fixed-point cap, mirrors the episode horizon
  bool with_oracle = false;
  int threads = 1;
};

/// Resolves the trained network for a DQN policy at a given UE count;
/// called once per (policy, K) cell before simulations start.
using DqnLookup =
    std::function<const dqn::QNetwork<float>*(policy::PolicyKind, int)>;

struct SimOutcome {
  int final_off_count = 0;
  bool violated = false;
  double final_reward = 0.0;
  int ticks = 0;
};

/// Applies one policy from the all-ON start until its flag vector reaches a
/// fixed point, a previously seen configuration recurs, or max_ticks pass.
/// DQN policies toggle one card per tick; the others emit full vectors.
SimOutcome run_policy_to_fixed_point(
    const net::NetworkConfig& cfg, const std::vector<net::RadioCard>& rcs,
    const net::UeLayout& layout, const mdp::RewardWeights& weights,
    policy::PolicyKind kind, const dqn::QNetwork<float>* net, int max_ticks);

/// The full benchmark grid. Throws std::invalid_argument when a DQN policy
/// has no checkpoint for a requested UE count.
std::vector<BenchCell> run_bench(const net::NetworkConfig& base_cfg,
                                 const mdp::RewardWeights& weights,
                                 const BenchOptions& options,
                                 const DqnLookup& lookup);

}  // namespace eslab::cli
