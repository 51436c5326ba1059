#include "eslab/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eslab::net {

void NetworkConfig::validate() const {
  if (area_width_m <= 0 || area_height_m <= 0)
    throw std::invalid_argument("network: area dimensions must be positive");
  if (ru_positions.empty())
    throw std::invalid_argument("network: at least one RU position required");
  for (const auto& p : ru_positions) {
    if (p.x < 0 || p.x > area_width_m || p.y < 0 || p.y > area_height_m)
      throw std::invalid_argument("network: RU position outside the area");
  }
  if (rcs_per_ru < 1)
    throw std::invalid_argument("network: rcs_per_ru must be >= 1");
  if (static_cast<int>(band_frequencies_hz.size()) != rcs_per_ru)
    throw std::invalid_argument(
        "network: band_frequencies_hz must have one entry per RC slot");
  for (double f : band_frequencies_hz) {
    if (!(f > 0))
      throw std::invalid_argument("network: frequencies must be positive");
  }
  if (!std::isfinite(tx_power_dbm))
    throw std::invalid_argument("network: tx_power_dbm must be finite");
  if (capacity_max < 1)
    throw std::invalid_argument("network: capacity_max must be >= 1");
  if (num_ues < 1)
    throw std::invalid_argument("network: num_ues must be >= 1");
  if (!(speed_of_light_mps > 0))
    throw std::invalid_argument("network: speed of light must be positive");
  if (!(min_distance_m > 0))
    throw std::invalid_argument("network: min_distance_m must be positive");
}

std::vector<RadioCard> build_radio_cards(const NetworkConfig& cfg) {
  std::vector<RadioCard> rcs;
  rcs.reserve(cfg.num_rcs());
  for (int ru = 0; ru < cfg.num_rus(); ++ru) {
    for (int slot = 0; slot < cfg.rcs_per_ru; ++slot) {
      rcs.push_back({ru * cfg.rcs_per_ru + slot, ru,
                     cfg.band_frequencies_hz[slot], cfg.ru_positions[ru]});
    }
  }
  return rcs;
}

UeLayout sample_layout(const NetworkConfig& cfg, Rng& rng) {
  UeLayout layout;
  layout.positions.reserve(cfg.num_ues);
  for (int k = 0; k < cfg.num_ues; ++k) {
    const double x = rng.uniform(0.0, cfg.area_width_m);
    const double y = rng.uniform(0.0, cfg.area_height_m);
    layout.positions.push_back({x, y});
  }
  return layout;
}

double fspl_db(double distance_m, double frequency_hz, double c_mps) {
  if (!(distance_m > 0))
    throw std::domain_error("fspl_db: distance must be positive");
  if (!(frequency_hz > 0))
    throw std::domain_error("fspl_db: frequency must be positive");
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(frequency_hz) +
         20.0 * std::log10(4.0 * std::numbers::pi / c_mps);
}

double rss_dbm(double tx_power_dbm, double distance_m, double frequency_hz,
               double c_mps) {
  return tx_power_dbm - fspl_db(distance_m, frequency_hz, c_mps);
}

Eigen::MatrixXd compute_rss_matrix(const NetworkConfig& cfg,
                                   const std::vector<RadioCard>& rcs,
                                   const UeLayout& layout) {
  const int m = static_cast<int>(rcs.size());
  const int k = layout.num_ues();
  Eigen::MatrixXd rss(m, k);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      const double d = std::max(distance(rcs[i].position, layout.positions[j]),
                                cfg.min_distance_m);
      rss(i, j) =
          rss_dbm(cfg.tx_power_dbm, d, rcs[i].frequency_hz,
                  cfg.speed_of_light_mps);
    }
  }
  return rss;
}

std::vector<int> associate(const Eigen::MatrixXd& rss,
                           const std::vector<std::uint8_t>& rc_flags,
                           double rss_min_dbm) {
  const int m = static_cast<int>(rss.rows());
  const int k = static_cast<int>(rss.cols());
  if (static_cast<int>(rc_flags.size()) != m)
    throw std::invalid_argument("associate: flag/RSS dimension mismatch");
  std::vector<int> assoc(k, kNoAssociation);
  for (int j = 0; j < k; ++j) {
    int best = kNoAssociation;
    double best_rss = 0.0;
    for (int i = 0; i < m; ++i) {
      if (!rc_flags[i]) continue;
      if (best == kNoAssociation || rss(i, j) > best_rss) {
        best = i;
        best_rss = rss(i, j);
      }
    }
    if (best != kNoAssociation && best_rss >= rss_min_dbm) assoc[j] = best;
  }
  return assoc;
}

std::vector<int> count_connections(const std::vector<int>& association,
                                   int num_rcs) {
  std::vector<int> counts(num_rcs, 0);
  for (int rc : association) {
    if (rc != kNoAssociation) ++counts[rc];
  }
  return counts;
}

NetworkState make_state(const Eigen::MatrixXd& rss,
                        std::vector<std::uint8_t> rc_flags,
                        const NetworkConfig& cfg) {
  NetworkState state;
  state.rss_dbm = rss;
  state.association = associate(rss, rc_flags, cfg.rss_min_dbm);
  state.connection_counts =
      count_connections(state.association, static_cast<int>(rc_flags.size()));
  state.rc_flags = std::move(rc_flags);
  return state;
}

ConstraintReport check_constraints(const NetworkState& state,
                                   const NetworkConfig& cfg) {
  ConstraintReport report;
  for (int k = 0; k < state.num_ues(); ++k) {
    const int rc = state.association[k];
    if (rc == kNoAssociation) {
      report.unserved_ues.push_back(k);
      report.rss_ok = false;
    } else if (state.rss_dbm(rc, k) < cfg.rss_min_dbm) {
      report.rss_ok = false;
    }
  }
  for (int m = 0; m < state.num_rcs(); ++m) {
    if (state.connection_counts[m] > cfg.capacity_max)
      report.oversubscribed_rcs.push_back(m);
  }
  return report;
}

int count_off(const std::vector<std::uint8_t>& rc_flags) {
  return static_cast<int>(
      std::count(rc_flags.begin(), rc_flags.end(), std::uint8_t{0}));
}

}  // namespace eslab::net
