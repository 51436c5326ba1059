#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eslab/dqn/network.hpp"
#include "eslab/mdp_env.hpp"
#include "eslab/netmodel.hpp"

namespace eslab::policy {

enum class PolicyKind {
  kDqnEs1,     // trained DQN over RSS + UE geolocations
  kDqnEs2,     // trained DQN over RSS only
  kBaseline,   // switch off RCs with no connected UEs
  kHeuristic,  // documented stand-in for the published heuristic
  kAlwaysOn,   // control: never switches anything off
};

std::string to_string(PolicyKind k);
PolicyKind policy_kind_from_string(const std::string& s);
bool is_dqn(PolicyKind k);

using FlagVec = std::vector<std::uint8_t>;

/// Switches off exactly the RCs with zero connections under the current
/// association; everything else keeps its flag.
FlagVec baseline_decide(const net::NetworkState& state,
                        const net::NetworkConfig& cfg);

/// Greedy constraint-respecting pass: visits ON RCs in ascending
/// connection-count order (ties by rc_id), tentatively switches each off,
/// re-associates every UE, and keeps the change only if the resulting state
/// serves all UEs at RSS >= R_min with no RC above C_max. Stand-in for the
/// published heuristic, whose internals are not public; reported as
/// "heuristic-standin" everywhere.
FlagVec heuristic_decide(const net::NetworkState& state,
                         const net::NetworkConfig& cfg);

/// Greedy DQN tick: one toggle applied to the current flags.
FlagVec dqn_decide(const dqn::QNetwork<float>& net,
                   const mdp::StateEncoding& encoding,
                   const net::NetworkState& state,
                   const net::UeLayout& layout);

FlagVec always_on_decide(const net::NetworkState& state);

}  // namespace eslab::policy
