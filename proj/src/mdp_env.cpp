#include "eslab/mdp_env.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace eslab::mdp {

std::string to_string(StateVariant v) {
  return v == StateVariant::kRssAndGeo ? "rss_and_geo" : "rss_only";
}

StateVariant state_variant_from_string(const std::string& s) {
  if (s == "rss_and_geo" || s == "es1") return StateVariant::kRssAndGeo;
  if (s == "rss_only" || s == "es2") return StateVariant::kRssOnly;
  throw std::invalid_argument("unknown state variant: " + s);
}

std::string to_string(RewardMode m) {
  return m == RewardMode::kPaperLiteral ? "paper_literal"
                                        : "objective_consistent";
}

RewardMode reward_mode_from_string(const std::string& s) {
  if (s == "paper_literal") return RewardMode::kPaperLiteral;
  if (s == "objective_consistent") return RewardMode::kObjectiveConsistent;
  throw std::invalid_argument("unknown reward mode: " + s);
}

RewardWeights RewardWeights::paper_literal() {
  return {-5.0, 1.0, 5.0, -20.0, 1.0, -1.0, RewardMode::kPaperLiteral};
}

RewardWeights RewardWeights::objective_consistent() {
  return {5.0, -1.0, 5.0, -20.0, 1.0, -1.0, RewardMode::kObjectiveConsistent};
}

RewardWeights RewardWeights::for_mode(RewardMode mode) {
  return mode == RewardMode::kPaperLiteral ? paper_literal()
                                           : objective_consistent();
}

std::vector<float> encode_state(const net::NetworkState& state,
                                const net::UeLayout& layout,
                                const StateEncoding& encoding) {
  const int m = state.num_rcs();
  const int k = state.num_ues();
  const auto& norm = encoding.norm;
  const double rss_span = norm.rss_hi_dbm - norm.rss_lo_dbm;
  const bool with_geo = encoding.variant == StateVariant::kRssAndGeo;

  std::vector<float> out;
  out.reserve(encoding.encoded_dim(k, m));
  std::vector<double> column(m);
  for (int j = 0; j < k; ++j) {
    if (with_geo) {
      out.push_back(static_cast<float>(layout.positions[j].x / norm.pos_scale_m));
      out.push_back(static_cast<float>(layout.positions[j].y / norm.pos_scale_m));
    }
    for (int i = 0; i < m; ++i) {
      column[i] = state.rc_flags[i] ? state.rss_dbm(i, j) : norm.rss_lo_dbm;
    }
    std::sort(column.begin(), column.end(), std::greater<>());
    for (double v : column) {
      const double unit = (v - norm.rss_lo_dbm) / rss_span;
      out.push_back(static_cast<float>(std::clamp(unit, 0.0, 1.0)));
    }
  }
  return out;
}

RewardBreakdown compute_reward(const net::NetworkState& state,
                               const net::NetworkConfig& cfg,
                               const RewardWeights& w) {
  RewardBreakdown r;
  const int m = state.num_rcs();
  const int z = net::count_off(state.rc_flags);
  r.rc_off_term = w.w_off * (static_cast<double>(z) / m) +
                  w.w_on * (static_cast<double>(m - z) / m);

  const auto report = net::check_constraints(state, cfg);
  r.rss_breach_term = report.rss_ok ? w.rss_ok_bonus : w.rss_breach_penalty;

  r.capacity_term = 0.0;
  for (int i = 0; i < m; ++i) {
    r.capacity_term += (state.connection_counts[i] <= cfg.capacity_max)
                           ? w.cap_ok_per_rc
                           : w.cap_breach_per_rc;
  }

  r.total = r.rc_off_term + r.rss_breach_term + r.capacity_term;
  return r;
}

Env::Env(net::NetworkConfig cfg, StateEncoding encoding, RewardWeights weights,
         int steps_per_episode)
    : cfg_(std::move(cfg)),
      encoding_(encoding),
      weights_(weights),
      steps_per_episode_(steps_per_episode) {
  cfg_.validate();
  if (steps_per_episode_ < 1)
    throw std::invalid_argument("env: steps_per_episode must be >= 1");
  rcs_ = net::build_radio_cards(cfg_);
}

std::vector<float> Env::reset(Rng& rng) {
  return begin_episode(net::sample_layout(cfg_, rng));
}

std::vector<float> Env::reset_with_layout(net::UeLayout layout) {
  if (layout.num_ues() != cfg_.num_ues)
    throw std::invalid_argument("env: layout size does not match num_ues");
  return begin_episode(std::move(layout));
}

std::vector<float> Env::begin_episode(net::UeLayout layout) {
  layout_ = std::move(layout);
  step_count_ = 0;
  // UEs are stationary, so the RSS matrix is fixed for the whole episode.
  const auto rss = net::compute_rss_matrix(cfg_, rcs_, layout_);
  state_ = net::make_state(rss, std::vector<std::uint8_t>(cfg_.num_rcs(), 1),
                           cfg_);
  return encode_state(state_, layout_, encoding_);
}

StepResult Env::step(ActionIndex action) {
  if (terminal())
    throw std::logic_error("env: step() called on a terminal episode");
  if (action.value < 0 || action.value >= action_count())
    throw std::invalid_argument("env: action index out of range");

  auto flags = state_.rc_flags;
  flags[action.rc()] = action.turns_on() ? 1 : 0;
  state_ = net::make_state(state_.rss_dbm, std::move(flags), cfg_);
  ++step_count_;

  StepResult result;
  result.next_state = encode_state(state_, layout_, encoding_);
  result.reward = compute_reward(state_, cfg_, weights_);
  result.terminal = terminal();
  result.report = net::check_constraints(state_, cfg_);
  result.off_count = net::count_off(state_.rc_flags);
  return result;
}

int Env::encoded_dim() const {
  return encoding_.encoded_dim(cfg_.num_ues, cfg_.num_rcs());
}

}  // namespace eslab::mdp
