#pragma once

#include <string>
#include <vector>

#include "eslab/trainer.hpp"

namespace eslab::cli {

/// Deterministic decimal formatting shared by every CSV and SVG emitter:
/// identical doubles always print identical bytes.
std::string fmt_double(double v);

std::string train_log_csv(const train::TrainLog& log);

/// Episode rows plus one trailing aggregate row (means in the main columns,
/// sample standard deviations in the std_* columns).
std::string eval_csv(const train::EvalReport& report);

struct OracleCsvRow {
  std::uint64_t layout_seed = 0;
  std::string mode;
  int max_off = -1;
  long feasible_count = 0;
  std::string flags_bitstring;  // '1' = ON, RC order; empty when infeasible
};

std::string oracle_csv(const std::vector<OracleCsvRow>& rows);

struct BenchCell {
  std::string policy;
  int num_ues = 0;
  int sims = 0;
  double mean_off_count = 0.0;
  double std_off_count = 0.0;
  double mean_off_ratio = 0.0;
  double std_off_ratio = 0.0;
  double violation_rate = 0.0;  // fraction of sims ending with any violation
  double mean_final_reward = 0.0;
  bool has_oracle = false;
  double oracle_mean_max_off = 0.0;  // ASSOC mode
};

std::string bench_csv(const std::vector<BenchCell>& cells);

/// Parsed subset of a training log needed by the plot command.
struct ParsedTrainLog {
  std::vector<double> episodes;
  std::vector<double> mean_reward;
  std::vector<double> mean_loss;  // NaN where the log recorded none
};

/// Throws std::runtime_error on missing columns or malformed rows.
ParsedTrainLog parse_train_log_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace eslab::cli
