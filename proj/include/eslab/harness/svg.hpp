#pragma once

#include <string>
#include <vector>

#include "eslab/harness/csv.hpp"

namespace eslab::cli {

struct LineSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;  // NaN entries are skipped
};

/// One panel with the given series, axis labels, and a small legend.
/// Pure function of its inputs: same data, same bytes.
std::string svg_line_chart(const std::vector<LineSeries>& series,
                           const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label);

/// Two stacked line panels (reward on top, loss below), as emitted by the
/// plot command.
std::string svg_train_curves(const std::vector<LineSeries>& reward,
                             const std::vector<LineSeries>& loss);

/// Grouped bars: one group per UE count, one bar per policy, whiskers at
/// +-1 standard deviation of the OFF count.
std::string svg_bench_chart(const std::vector<BenchCell>& cells);

}  // namespace eslab::cli
