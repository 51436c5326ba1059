#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "eslab/rng.hpp"

namespace eslab::net {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Static description of one scenario: geometry, radio cards, bands,
/// powers, thresholds. Defaults mirror the evaluation setup: 6 RUs with
/// two cards each (N77 at 3.7 GHz, N78 at 3.5 GHz), 30 dBm per card,
/// R_min = -95 dBm, C_max = 10, a 500 m x 500 m area.
struct NetworkConfig {
  double area_width_m = 500.0;
  double area_height_m = 500.0;
  /// Default: 2x3 grid with 100 m inter-site separation centered at (250,250).
  std::vector<Vec2> ru_positions = {{150, 200}, {250, 200}, {350, 200},
                                    {150, 300}, {250, 300}, {350, 300}};
  int rcs_per_ru = 2;
  /// One carrier per RC slot of an RU; slot 0 = N77, slot 1 = N78.
  std::vector<double> band_frequencies_hz = {3.7e9, 3.5e9};
  double tx_power_dbm = 30.0;
  double rss_min_dbm = -95.0;
  int capacity_max = 10;
  int num_ues = 50;
  double speed_of_light_mps = 299792458.0;
  /// UE-to-RU distances are clamped below this before the path-loss call.
  double min_distance_m = 1.0;

  int num_rus() const { return static_cast<int>(ru_positions.size()); }
  int num_rcs() const { return num_rus() * rcs_per_ru; }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// One carrier of an RU. rc_id is 0-based and globally unique; the cards
/// of RU r occupy ids [r*rcs_per_ru, (r+1)*rcs_per_ru).
struct RadioCard {
  int rc_id = 0;
  int ru_id = 0;
  double frequency_hz = 0.0;
  Vec2 position;
};

std::vector<RadioCard> build_radio_cards(const NetworkConfig& cfg);

struct UeLayout {
  std::vector<Vec2> positions;
  int num_ues() const { return static_cast<int>(positions.size()); }
};

/// Uniform-random stationary UE placement inside the area.
UeLayout sample_layout(const NetworkConfig& cfg, Rng& rng);

inline constexpr int kNoAssociation = -1;

/// Dynamic snapshot of the network at one control tick.
struct NetworkState {
  std::vector<std::uint8_t> rc_flags;  // length M, 1 = ON
  Eigen::MatrixXd rss_dbm;             // M x K, RC-indexed rows (unsorted)
  std::vector<int> association;        // length K, rc_id or kNoAssociation
  std::vector<int> connection_counts;  // length M

  int num_rcs() const { return static_cast<int>(rc_flags.size()); }
  int num_ues() const { return static_cast<int>(association.size()); }
};

struct ConstraintReport {
  bool rss_ok = true;
  std::vector<int> oversubscribed_rcs;  // sorted rc_ids with count > C_max
  std::vector<int> unserved_ues;        // sorted UE indices with no link

  bool clean() const { return rss_ok && oversubscribed_rcs.empty(); }
};

/// Free-space path loss, 20 log10(d) + 20 log10(f) + 20 log10(4 pi / c).
/// Callers clamp d to NetworkConfig::min_distance_m; the function itself
/// rejects non-positive arguments.
double fspl_db(double distance_m, double frequency_hz, double c_mps);

/// Link budget: tx power minus free-space path loss. No fading, no shadowing.
double rss_dbm(double tx_power_dbm, double distance_m, double frequency_hz,
               double c_mps);

/// RSS of every (RC, UE) pair, computed for all RCs regardless of ON/OFF.
Eigen::MatrixXd compute_rss_matrix(const NetworkConfig& cfg,
                                   const std::vector<RadioCard>& rcs,
                                   const UeLayout& layout);

/// Strongest-RSS association. Each UE takes the ON RC with maximal RSS,
/// ties broken by lowest rc_id; below rss_min or with no RC ON the UE is
/// left unassociated. Not capacity-aware: overload is surfaced by
/// check_constraints and punished by the reward, never repaired here.
std::vector<int> associate(const Eigen::MatrixXd& rss,
                           const std::vector<std::uint8_t>& rc_flags,
                           double rss_min_dbm);

std::vector<int> count_connections(const std::vector<int>& association,
                                   int num_rcs);

/// Assembles a consistent NetworkState (association + counts) for the
/// given flags over a fixed RSS matrix.
NetworkState make_state(const Eigen::MatrixXd& rss,
                        std::vector<std::uint8_t> rc_flags,
                        const NetworkConfig& cfg);

ConstraintReport check_constraints(const NetworkState& state,
                                   const NetworkConfig& cfg);

/// Z: the number of switched-off radio cards.
int count_off(const std::vector<std::uint8_t>& rc_flags);

}  // namespace eslab::net
