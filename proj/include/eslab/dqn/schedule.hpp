#pragma once

#include <cmath>
#include <stdexcept>

namespace eslab::dqn {

/// Exponential exploration anneal over environment steps:
/// eps(t) = eps_end + (eps_start - eps_end) * exp(-t / decay_steps).
struct EpsilonSchedule {
  double eps_start = 0.9;
  double eps_end = 0.05;
  long decay_steps = 1;

  double at(long t) const {
    if (decay_steps < 1)
      throw std::invalid_argument("epsilon: decay_steps must be >= 1");
    return eps_end + (eps_start - eps_end) *
                         std::exp(-static_cast<double>(t) / decay_steps);
  }
};

}  // namespace eslab::dqn
