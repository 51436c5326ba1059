#include "eslab/policies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eslab::policy {

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::kDqnEs1: return "dqn-es1";
    case PolicyKind::kDqnEs2: return "dqn-es2";
    case PolicyKind::kBaseline: return "baseline";
    case PolicyKind::kHeuristic: return "heuristic-standin";
    case PolicyKind::kAlwaysOn: return "always-on";
  }
  throw std::logic_error("unreachable policy kind");
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "dqn-es1" || s == "es1") return PolicyKind::kDqnEs1;
  if (s == "dqn-es2" || s == "es2") return PolicyKind::kDqnEs2;
  if (s == "baseline") return PolicyKind::kBaseline;
  if (s == "heuristic-standin" || s == "heuristic")
    return PolicyKind::kHeuristic;
  if (s == "always-on") return PolicyKind::kAlwaysOn;
  throw std::invalid_argument("unknown policy: " + s);
}

bool is_dqn(PolicyKind k) {
  return k == PolicyKind::kDqnEs1 || k == PolicyKind::kDqnEs2;
}

FlagVec baseline_decide(const net::NetworkState& state,
                        const net::NetworkConfig& cfg) {
  (void)cfg;
  FlagVec flags = state.rc_flags;
  for (int m = 0; m < state.num_rcs(); ++m) {
    if (state.connection_counts[m] == 0) flags[m] = 0;
  }
  return flags;
}

FlagVec heuristic_decide(const net::NetworkState& state,
                         const net::NetworkConfig& cfg) {
  const int m = state.num_rcs();

  // Visit order is fixed up front from the input state's counts.
  std::vector<int> order;
  for (int i = 0; i < m; ++i)
    if (state.rc_flags[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return state.connection_counts[a] < state.connection_counts[b];
  });

  FlagVec flags = state.rc_flags;
  for (int rc : order) {
    FlagVec tentative = flags;
    tentative[rc] = 0;
    const auto assoc = net::associate(state.rss_dbm, tentative,
                                      cfg.rss_min_dbm);
    const auto counts = net::count_connections(assoc, m);
    const bool all_served =
        std::none_of(assoc.begin(), assoc.end(),
                     [](int a) { return a == net::kNoAssociation; });
    const bool within_capacity =
        std::all_of(counts.begin(), counts.end(),
                    [&](int c) { return c <= cfg.capacity_max; });
    if (all_served && within_capacity) flags = std::move(tentative);
  }
  return flags;
}

FlagVec dqn_decide(const dqn::QNetwork<float>& net,
                   const mdp::StateEncoding& encoding,
                   const net::NetworkState& state,
                   const net::UeLayout& layout) {
  const std::vector<float> encoded = encode_state(state, layout, encoding);
  if (static_cast<int>(encoded.size()) != net.input_dim())
    throw std::invalid_argument(
        "dqn policy: checkpoint input dim " + std::to_string(net.input_dim()) +
        " does not match encoded dim " + std::to_string(encoded.size()));
  const dqn::VectorX<float> q = net.forward(Eigen::Map<const dqn::VectorX<float>>(
      encoded.data(), static_cast<Eigen::Index>(encoded.size())));
  int best = 0;
  for (int i = 1; i < q.size(); ++i)
    if (q(i) > q(best)) best = i;
  const mdp::ActionIndex action{best};
  FlagVec flags = state.rc_flags;
  flags[action.rc()] = action.turns_on() ? 1 : 0;
  return flags;
}

FlagVec always_on_decide(const net::NetworkState& state) {
  return FlagVec(state.rc_flags.size(), 1);
}

}  // namespace eslab::policy
