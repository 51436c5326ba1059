#include "eslab/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace eslab::oracle {

std::string to_string(OracleMode m) {
  return m == OracleMode::kAssoc ? "assoc" : "matching";
}

OracleMode oracle_mode_from_string(const std::string& s) {
  if (s == "assoc") return OracleMode::kAssoc;
  if (s == "matching") return OracleMode::kMatching;
  throw std::invalid_argument("unknown oracle mode: " + s);
}

namespace {

// Unit augmenting-path search: place UE k, relocating earlier UEs when
// their RC is full. Classic Ford-Fulkerson on the bipartite graph.
bool try_place(int ue, const std::vector<std::vector<int>>& candidates,
               int capacity, std::vector<std::vector<int>>& assigned_ues,
               std::vector<std::uint8_t>& rc_visited) {
  for (int rc : candidates[ue]) {
    if (rc_visited[rc]) continue;
    rc_visited[rc] = 1;
    if (static_cast<int>(assigned_ues[rc].size()) < capacity) {
      assigned_ues[rc].push_back(ue);
      return true;
    }
    for (int& occupant : assigned_ues[rc]) {
      if (try_place(occupant, candidates, capacity, assigned_ues,
                    rc_visited)) {
        occupant = ue;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

bool matching_feasible(const std::vector<std::vector<int>>& candidates,
                       int num_rcs, int capacity) {
  std::vector<std::vector<int>> assigned_ues(num_rcs);
  std::vector<std::uint8_t> rc_visited(num_rcs);
  for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
    std::fill(rc_visited.begin(), rc_visited.end(), 0);
    if (!try_place(k, candidates, capacity, assigned_ues, rc_visited))
      return false;
  }
  return true;
}

bool assoc_feasible(const Eigen::MatrixXd& rss,
                    const std::vector<std::uint8_t>& rc_flags,
                    const net::NetworkConfig& cfg) {
  const int m = static_cast<int>(rss.rows());
  const int k = static_cast<int>(rss.cols());
  std::vector<int> load(m, 0);
  for (int j = 0; j < k; ++j) {
    int best = -1;
    double best_rss = 0.0;
    for (int i = 0; i < m; ++i) {
      if (!rc_flags[i]) continue;
      if (best < 0 || rss(i, j) > best_rss) {
        best = i;
        best_rss = rss(i, j);
      }
    }
    if (best < 0 || best_rss < cfg.rss_min_dbm) return false;
    if (++load[best] > cfg.capacity_max) return false;
  }
  return true;
}

OracleResult oracle_max_off(const net::NetworkConfig& cfg,
                            const net::UeLayout& layout, OracleMode mode) {
  cfg.validate();
  const int m = cfg.num_rcs();
  if (m > kMaxOracleRcs)
    throw std::invalid_argument(
        "oracle: " + std::to_string(m) + " RCs exceed the enumeration guard (" +
        std::to_string(kMaxOracleRcs) +
        "); shrink the scenario to M <= 20");

  const auto rcs = net::build_radio_cards(cfg);
  const Eigen::MatrixXd rss = net::compute_rss_matrix(cfg, rcs, layout);
  const int k = layout.num_ues();

  // Per-UE candidate RCs meeting R_min, independent of ON/OFF.
  std::vector<std::vector<int>> in_range(k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i)
      if (rss(i, j) >= cfg.rss_min_dbm) in_range[j].push_back(i);

  OracleResult result;
  result.mode = mode;

  std::vector<std::uint8_t> flags(m);
  std::vector<std::vector<int>> on_candidates(k);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    for (int i = 0; i < m; ++i) flags[i] = (mask >> i) & 1u;

    bool feasible;
    if (mode == OracleMode::kAssoc) {
      feasible = assoc_feasible(rss, flags, cfg);
    } else {
      feasible = true;
      for (int j = 0; j < k && feasible; ++j) {
        on_candidates[j].clear();
        for (int rc : in_range[j])
          if (flags[rc]) on_candidates[j].push_back(rc);
        if (on_candidates[j].empty()) feasible = false;
      }
      // Cheap necessary condition before running the flow.
      if (feasible) {
        const int on_count = m - net::count_off(flags);
        if (static_cast<long>(on_count) * cfg.capacity_max < k)
          feasible = false;
      }
      if (feasible)
        feasible = matching_feasible(on_candidates, m, cfg.capacity_max);
    }
    if (!feasible) continue;

    ++result.feasible_count;
    const int off = net::count_off(flags);
    if (off > result.max_off ||
        (off == result.max_off && flags < result.argmax_flags)) {
      result.max_off = off;
      result.argmax_flags = flags;
    }
  }
  return result;
}

}  // namespace eslab::oracle
