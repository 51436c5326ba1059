#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eslab/netmodel.hpp"
#include "eslab/rng.hpp"

namespace eslab::mdp {

enum class StateVariant {
  kRssAndGeo,  // ES-xApp-1: per-UE (x, y) plus sorted RSS column
  kRssOnly,    // ES-xApp-2: sorted RSS column only
};

std::string to_string(StateVariant v);
StateVariant state_variant_from_string(const std::string& s);

struct Normalization {
  double pos_scale_m = 500.0;
  double rss_lo_dbm = -120.0;  // also the sentinel for OFF RCs
  double rss_hi_dbm = -40.0;
};

struct StateEncoding {
  StateVariant variant = StateVariant::kRssAndGeo;
  Normalization norm;

  int encoded_dim(int num_ues, int num_rcs) const {
    const int per_ue = (variant == StateVariant::kRssAndGeo) ? 2 + num_rcs
                                                             : num_rcs;
    return num_ues * per_ue;
  }
};

/// Canonical encoding for a scenario: positions scaled by the area width,
/// RSS mapped from [-120, -40] dBm.
inline StateEncoding make_encoding(StateVariant variant,
                                   const net::NetworkConfig& cfg) {
  return {variant, {cfg.area_width_m, -120.0, -40.0}};
}

/// Per UE: optional normalized (x, y), then that UE's RSS column sorted in
/// descending order. OFF RCs enter the sort as a sentinel at rss_lo_dbm so
/// they land at the tail; everything is affinely mapped to [0,1], clamped.
std::vector<float> encode_state(const net::NetworkState& state,
                                const net::UeLayout& layout,
                                const StateEncoding& encoding);

/// Flat action space [on_1, off_1, ..., on_M, off_M]; 0-based index.
struct ActionIndex {
  int value = 0;

  int rc() const { return value / 2; }
  bool turns_on() const { return value % 2 == 0; }

  static ActionIndex turn_on(int rc) { return {2 * rc}; }
  static ActionIndex turn_off(int rc) { return {2 * rc + 1}; }
};

inline int action_count(int num_rcs) { return 2 * num_rcs; }

enum class RewardMode { kPaperLiteral, kObjectiveConsistent };

std::string to_string(RewardMode m);
RewardMode reward_mode_from_string(const std::string& s);

struct RewardWeights {
  double w_off = 5.0;
  double w_on = -1.0;
  double rss_ok_bonus = 5.0;
  double rss_breach_penalty = -20.0;
  double cap_ok_per_rc = 1.0;
  double cap_breach_per_rc = -1.0;
  RewardMode mode = RewardMode::kObjectiveConsistent;

  /// Coefficients exactly as printed: (-5, +1, +5, -20, +1, -1). Note the
  /// off/on signs reward keeping cards ON; kept selectable for fidelity
  /// experiments.
  static RewardWeights paper_literal();
  /// Off/on signs flipped to (+5, -1) so the reward increases with the
  /// switch-off count, matching the optimization objective.
  static RewardWeights objective_consistent();
  static RewardWeights for_mode(RewardMode mode);
};

struct RewardBreakdown {
  double rc_off_term = 0.0;
  double rss_breach_term = 0.0;
  double capacity_term = 0.0;
  double total = 0.0;
};

/// rc_off_term   = w_off * Z/M + w_on * (M-Z)/M
/// rss_term      = bonus if every UE is served at RSS >= R_min, else penalty
/// capacity_term = per-RC ok/breach sum; OFF RCs count as non-violated
RewardBreakdown compute_reward(const net::NetworkState& state,
                               const net::NetworkConfig& cfg,
                               const RewardWeights& w);

struct StepResult {
  std::vector<float> next_state;
  RewardBreakdown reward;
  bool terminal = false;
  net::ConstraintReport report;
  int off_count = 0;
};

/// Episodic control environment over the network model. Single-owner
/// mutable state: step from one thread at a time; independent instances
/// may run in parallel with independent RNG streams.
class Env {
 public:
  Env(net::NetworkConfig cfg, StateEncoding encoding, RewardWeights weights,
      int steps_per_episode);

  /// Fresh uniform-random layout, all RCs ON, step counter zeroed.
  std::vector<float> reset(Rng& rng);
  /// Same, but with a caller-provided layout (paired benchmarking).
  std::vector<float> reset_with_layout(net::UeLayout layout);

  /// Applies one toggle (no-op toggles are legal), re-associates every UE,
  /// scores the resulting state. Throws std::logic_error once terminal.
  StepResult step(ActionIndex action);

  int encoded_dim() const;
  int action_count() const { return mdp::action_count(cfg_.num_rcs()); }
  int steps_per_episode() const { return steps_per_episode_; }
  int step_count() const { return step_count_; }
  bool terminal() const { return step_count_ >= steps_per_episode_; }

  const net::NetworkConfig& config() const { return cfg_; }
  const net::NetworkState& state() const { return state_; }
  const net::UeLayout& layout() const { return layout_; }
  const StateEncoding& encoding() const { return encoding_; }
  const RewardWeights& reward_weights() const { return weights_; }

 private:
  std::vector<float> begin_episode(net::UeLayout layout);

  net::NetworkConfig cfg_;
  std::vector<net::RadioCard> rcs_;
  StateEncoding encoding_;
  RewardWeights weights_;
  int steps_per_episode_;
  int step_count_ = 0;
  net::UeLayout layout_;
  net::NetworkState state_;
};

}  // namespace eslab::mdp
