#include "eslab/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eslab::cli {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string train_log_csv(const train::TrainLog& log) {
  std::string out =
      "episode,mean_reward,mean_loss,final_off_count,rss_violations,"
      "capacity_violations,epsilon\n";
  for (const auto& r : log.records) {
    out += std::to_string(r.episode);
    out += ',';
    out += fmt_double(r.mean_reward);
    out += ',';
    out += fmt_double(r.mean_loss);
    out += ',';
    out += std::to_string(r.final_off_count);
    out += ',';
    out += std::to_string(r.rss_violations);
    out += ',';
    out += std::to_string(r.capacity_violations);
    out += ',';
    out += fmt_double(r.epsilon);
    out += '\n';
  }
  return out;
}

std::string eval_csv(const train::EvalReport& report) {
  std::string out =
      "episode,final_off_count,final_off_ratio,rss_violations,"
      "capacity_violations,mean_reward,std_off_count,std_off_ratio,"
      "std_reward\n";
  if (report.episodes.empty()) return out;  // degenerate run: header only
  for (const auto& e : report.episodes) {
    out += std::to_string(e.episode);
    out += ',';
    out += std::to_string(e.final_off_count);
    out += ',';
    out += fmt_double(e.final_off_ratio);
    out += ',';
    out += std::to_string(e.rss_violations);
    out += ',';
    out += std::to_string(e.capacity_violations);
    out += ',';
    out += fmt_double(e.mean_reward);
    out += ",,,\n";
  }
  double rss_sum = 0.0, cap_sum = 0.0;
  for (const auto& e : report.episodes) {
    rss_sum += e.rss_violations;
    cap_sum += e.capacity_violations;
  }
  const double n = static_cast<double>(report.episodes.size());
  out += "aggregate,";
  out += fmt_double(report.mean_off_count());
  out += ',';
  out += fmt_double(report.mean_off_ratio());
  out += ',';
  out += fmt_double(rss_sum / n);
  out += ',';
  out += fmt_double(cap_sum / n);
  out += ',';
  out += fmt_double(report.mean_reward());
  out += ',';
  out += fmt_double(report.std_off_count());
  out += ',';
  out += fmt_double(report.std_off_ratio());
  out += ',';
  out += fmt_double(report.std_reward());
  out += '\n';
  return out;
}

std::string oracle_csv(const std::vector<OracleCsvRow>& rows) {
  std::string out = "layout_seed,mode,max_off,feasible_count,flags_bitstring\n";
  for (const auto& r : rows) {
    out += std::to_string(r.layout_seed);
    out += ',';
    out += r.mode;
    out += ',';
    out += std::to_string(r.max_off);
    out += ',';
    out += std::to_string(r.feasible_count);
    out += ',';
    out += r.flags_bitstring;
    out += '\n';
  }
  return out;
}

std::string bench_csv(const std::vector<BenchCell>& cells) {
  std::string out =
      "policy,num_ues,sims,mean_off_count,std_off_count,mean_off_ratio,"
      "std_off_ratio,violation_rate,mean_final_reward,oracle_mean_max_off\n";
  for (const auto& c : cells) {
    out += c.policy;
    out += ',';
    out += std::to_string(c.num_ues);
    out += ',';
    out += std::to_string(c.sims);
    out += ',';
    out += fmt_double(c.mean_off_count);
    out += ',';
    out += fmt_double(c.std_off_count);
    out += ',';
    out += fmt_double(c.mean_off_ratio);
    out += ',';
    out += fmt_double(c.std_off_ratio);
    out += ',';
    out += fmt_double(c.violation_rate);
    out += ',';
    out += fmt_double(c.mean_final_reward);
    out += ',';
    if (c.has_oracle) out += fmt_double(c.oracle_mean_max_off);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

ParsedTrainLog parse_train_log_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("train log: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("train log: empty file " + path);
  const auto header = split_csv_line(line);
  int col_episode = -1, col_reward = -1, col_loss = -1;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[i] == "episode") col_episode = i;
    if (header[i] == "mean_reward") col_reward = i;
    if (header[i] == "mean_loss") col_loss = i;
  }
  if (col_episode < 0 || col_reward < 0 || col_loss < 0)
    throw std::runtime_error(
        "train log: missing episode/mean_reward/mean_loss columns in " + path);

  ParsedTrainLog log;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    const int needed = std::max(col_episode, std::max(col_reward, col_loss));
    if (static_cast<int>(cells.size()) <= needed)
      throw std::runtime_error("train log: short row at line " +
                               std::to_string(line_no) + " in " + path);
    try {
      log.episodes.push_back(std::stod(cells[col_episode]));
      log.mean_reward.push_back(std::stod(cells[col_reward]));
      log.mean_loss.push_back(std::stod(cells[col_loss]));
    } catch (const std::exception&) {
      throw std::runtime_error("train log: malformed number at line " +
                               std::to_string(line_no) + " in " + path);
    }
  }
  return log;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace eslab::cli
