#pragma once

#include <cstdint>
#include <vector>

#include "eslab/netmodel.hpp"

namespace eslab::oracle {

/// Feasibility semantics for the exhaustive search.
///   kAssoc:    the environment's own strongest-RSS association must serve
///              every UE within capacity — the fair yardstick for the DQN.
///   kMatching: some capacity-respecting UE -> ON-RC assignment must exist
///              (max-flow decision) — the headroom an ideal steerer has.
enum class OracleMode { kAssoc, kMatching };

std::string to_string(OracleMode m);
OracleMode oracle_mode_from_string(const std::string& s);

struct OracleResult {
  int max_off = -1;                        // -1 when nothing is feasible
  std::vector<std::uint8_t> argmax_flags;  // empty when nothing is feasible
  long feasible_count = 0;
  OracleMode mode = OracleMode::kAssoc;
};

/// Enumeration guard: 2^M configurations are visited.
inline constexpr int kMaxOracleRcs = 20;

/// True iff a full UE assignment exists with per-UE candidate RC sets and a
/// shared per-RC capacity (max flow equals the UE count).
bool matching_feasible(const std::vector<std::vector<int>>& candidates,
                       int num_rcs, int capacity);

/// Strongest-RSS feasibility of one flag vector: every UE served at
/// RSS >= R_min and no RC above C_max. Independent of NetworkState
/// assembly so it can cross-check check_constraints.
bool assoc_feasible(const Eigen::MatrixXd& rss,
                    const std::vector<std::uint8_t>& rc_flags,
                    const net::NetworkConfig& cfg);

/// Exhaustive maximum switch-off count over all 2^M ON/OFF configurations.
/// Ties prefer the lexicographically smallest flag vector. Throws
/// std::invalid_argument when M exceeds the enumeration guard.
OracleResult oracle_max_off(const net::NetworkConfig& cfg,
                            const net::UeLayout& layout, OracleMode mode);

}  // namespace eslab::oracle
