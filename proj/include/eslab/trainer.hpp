#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eslab/dqn/adamw.hpp"
#include "eslab/dqn/learning.hpp"
#include "eslab/dqn/network.hpp"
#include "eslab/dqn/schedule.hpp"
#include "eslab/mdp_env.hpp"
#include "eslab/netmodel.hpp"

namespace eslab::train {

/// When gradient steps start: once the buffer holds a minibatch (the
/// text's reading), or only once the buffer is full (the pseudocode's
/// literal reading, kept for fidelity runs).
enum class WarmupRule { kBatchReady, kBufferFull };

struct TrainConfig {
  int episodes = 30000;
  int steps_per_episode = 100;
  int batch_size = 64;
  int buffer_capacity = 300000;
  double gamma = 0.99;
  double learning_rate = 1e-4;
  double weight_decay = 0.01;
  int target_sync_every = 50;  // gradient steps
  double eps_start = 0.9;
  double eps_end = 0.05;
  long eps_decay_steps = 0;  // 0 = episodes * steps_per_episode / 5
  std::vector<int> hidden_dims = {256, 256};
  mdp::StateVariant encoding = mdp::StateVariant::kRssAndGeo;
  mdp::RewardMode reward_mode = mdp::RewardMode::kObjectiveConsistent;
  WarmupRule warmup = WarmupRule::kBatchReady;
  double grad_clip_norm = 0.0;  // 0 = no clipping
  std::uint64_t seed = 0;
  int checkpoint_every = 0;  // episodes; 0 = none during training

  void validate() const;
  long resolved_eps_decay_steps() const;
  std::vector<int> layer_dims(int input_dim, int num_actions) const;
};

/// "desk" shrinks the episode count to laptop scale; "paper" is the full
/// published run length.
void apply_preset(TrainConfig& cfg, const std::string& preset);

struct EpisodeRecord {
  int episode = 0;  // 0-based
  double mean_reward = 0.0;
  double mean_loss = 0.0;  // NaN when the episode saw no gradient steps
  int final_off_count = 0;
  int rss_violations = 0;       // unserved or below-R_min UEs at final step
  int capacity_violations = 0;  // oversubscribed RCs at final step
  double epsilon = 0.0;         // schedule value after the episode
};

struct TrainLog {
  std::vector<EpisodeRecord> records;

  /// Sliding-window mean; windows shorter than `window` average what exists.
  static std::vector<double> moving_average(std::span<const double> series,
                                            int window);
};

struct TrainStats {
  long env_steps = 0;
  long gradient_steps = 0;
  long target_syncs = 0;
  long first_gradient_step = -1;  // env step count at first update, -1 = none
  std::size_t max_buffer_size = 0;
  bool diverged = false;
};

struct TrainResult {
  dqn::QNetwork<float> net;
  TrainLog log;
  TrainStats stats;
};

/// Optional observation hooks; checkpointing is the caller's concern.
struct TrainHooks {
  std::function<void(const EpisodeRecord&)> on_episode;
  std::function<void(const dqn::QNetwork<float>&, int /*episode*/)>
      on_checkpoint;
};

/// Runs the training loop: per-step epsilon-greedy acting, replay storage,
/// one gradient step per environment step after warm-up, target sync every
/// target_sync_every gradient steps. On divergence the result carries
/// everything learned so far and stats.diverged is set.
TrainResult train(const net::NetworkConfig& net_cfg, const TrainConfig& cfg,
                  const TrainHooks& hooks = {});

struct EvalEpisode {
  int episode = 0;
  int final_off_count = 0;
  double final_off_ratio = 0.0;
  int rss_violations = 0;
  int capacity_violations = 0;
  double mean_reward = 0.0;
};

struct EvalReport {
  std::vector<EvalEpisode> episodes;

  double mean_off_count() const;
  double std_off_count() const;
  double mean_off_ratio() const;
  double std_off_ratio() const;
  double mean_reward() const;
  double std_reward() const;
  /// Fraction of episodes ending with no capacity or RSS violation.
  double violation_free_fraction() const;
};

/// Greedy (eps = 0) rollouts on fresh layouts; one RNG stream per episode
/// derived from (seed, episode).
EvalReport evaluate_policy(const dqn::QNetwork<float>& net,
                           const mdp::StateEncoding& encoding,
                           const net::NetworkConfig& net_cfg,
                           const mdp::RewardWeights& weights,
                           int episodes, int steps_per_episode,
                           std::uint64_t seed);

}  // namespace eslab::train
