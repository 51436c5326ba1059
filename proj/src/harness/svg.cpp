#include "eslab/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace eslab::cli {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

constexpr double kWidth = 800, kHeight = 420;
constexpr double kLeft = 70, kRight = 780, kTop = 46, kBottom = 370;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finalize() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi == lo) {
      hi = lo + 1.0;
      lo = lo - 1.0;
    }
  }
  double unit(double v) const { return (v - lo) / (hi - lo); }
};

std::string text(double x, double y, const std::string& s,
                 const std::string& anchor = "start",
                 const std::string& extra = "") {
  return "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" +
         anchor + "\" font-family=\"sans-serif\" font-size=\"12\"" + extra +
         ">" + s + "</text>\n";
}

std::string axes_with_ticks(const Range& xr, const Range& yr,
                            const std::string& x_label,
                            const std::string& y_label,
                            const std::string& title) {
  std::string out;
  out += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
         px(kRight - kLeft) + "\" height=\"" + px(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  out += text((kLeft + kRight) / 2, 20, title, "middle",
              " font-weight=\"bold\"");
  out += text((kLeft + kRight) / 2, kHeight - 10, x_label, "middle");
  out += "<g transform=\"rotate(-90 16 " + px((kTop + kBottom) / 2) + ")\">" +
         text(16, (kTop + kBottom) / 2, y_label, "middle") + "</g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    const double gx = kLeft + f * (kRight - kLeft);
    const double gy = kBottom - f * (kBottom - kTop);
    out += "<line x1=\"" + px(gx) + "\" y1=\"" + px(kBottom) + "\" x2=\"" +
           px(gx) + "\" y2=\"" + px(kBottom + 5) + "\" stroke=\"#333333\"/>\n";
    out += text(gx, kBottom + 20, tick_label(xr.lo + f * (xr.hi - xr.lo)),
                "middle");
    out += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(gy) + "\" x2=\"" +
           px(kLeft) + "\" y2=\"" + px(gy) + "\" stroke=\"#333333\"/>\n";
    out += text(kLeft - 9, gy + 4, tick_label(yr.lo + f * (yr.hi - yr.lo)),
                "end");
  }
  return out;
}

std::string chart_body(const std::vector<LineSeries>& series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double x : s.xs) xr.include(x);
    for (double y : s.ys) yr.include(y);
  }
  xr.finalize();
  yr.finalize();

  std::string out = axes_with_ticks(xr, yr, x_label, y_label, title);
  int color = 0;
  double legend_x = kLeft + 10;
  for (const auto& s : series) {
    const char* stroke = kPalette[color % kPaletteSize];
    std::string points;
    for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      if (!std::isfinite(s.ys[i])) continue;
      const double x = kLeft + xr.unit(s.xs[i]) * (kRight - kLeft);
      const double y = kBottom - yr.unit(s.ys[i]) * (kBottom - kTop);
      points += px(x) + "," + px(y) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    out += "<line x1=\"" + px(legend_x) + "\" y1=\"" + px(kTop + 12) +
           "\" x2=\"" + px(legend_x + 18) + "\" y2=\"" + px(kTop + 12) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"2\"/>\n";
    out += text(legend_x + 22, kTop + 16, s.label);
    legend_x += 26 + 7.0 * static_cast<double>(s.label.size());
    ++color;
  }
  return out;
}

std::string svg_open(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) +
         "\" height=\"" + px(height) + "\" viewBox=\"0 0 " + px(width) + " " +
         px(height) + "\">\n<rect width=\"100%\" height=\"100%\" "
         "fill=\"white\"/>\n";
}

}  // namespace

std::string svg_line_chart(const std::vector<LineSeries>& series,
                           const std::string& title,
                           const std::string& x_label,
                           const std::string& y_label) {
  return svg_open(kWidth, kHeight) + chart_body(series, title, x_label, y_label) +
         "</svg>\n";
}

std::string svg_train_curves(const std::vector<LineSeries>& reward,
                             const std::vector<LineSeries>& loss) {
  std::string out = svg_open(kWidth, 2 * kHeight);
  out += "<g>\n" +
         chart_body(reward, "Moving-average reward", "episode", "reward") +
         "</g>\n";
  out += "<g transform=\"translate(0 " + px(kHeight) + ")\">\n" +
         chart_body(loss, "Moving-average loss", "episode", "loss") + "</g>\n";
  out += "</svg>\n";
  return out;
}

std::string svg_bench_chart(const std::vector<BenchCell>& cells) {
  std::vector<int> ks;
  std::vector<std::string> policies;
  for (const auto& c : cells) {
    if (std::find(ks.begin(), ks.end(), c.num_ues) == ks.end())
      ks.push_back(c.num_ues);
    if (std::find(policies.begin(), policies.end(), c.policy) ==
        policies.end())
      policies.push_back(c.policy);
  }
  std::sort(ks.begin(), ks.end());

  Range yr;
  yr.include(0.0);
  for (const auto& c : cells) yr.include(c.mean_off_count + c.std_off_count);
  yr.finalize();
  yr.hi *= 1.1;

  std::map<std::pair<std::string, int>, const BenchCell*> lookup;
  for (const auto& c : cells) lookup[{c.policy, c.num_ues}] = &c;

  std::string out = svg_open(kWidth, kHeight);
  Range xr;
  xr.lo = 0.0;
  xr.hi = static_cast<double>(ks.size());
  out += axes_with_ticks(xr, yr, "number of UEs", "mean switched-off RCs",
                         "Switched-off RCs per policy (whiskers: +-1 std)");

  const double group_w = (kRight - kLeft) / static_cast<double>(ks.size());
  const double bar_w =
      group_w * 0.8 / static_cast<double>(policies.size());
  for (std::size_t g = 0; g < ks.size(); ++g) {
    const double gx = kLeft + group_w * (static_cast<double>(g) + 0.5);
    out += text(gx, kBottom + 34, "K=" + std::to_string(ks[g]), "middle",
                " font-weight=\"bold\"");
    for (std::size_t p = 0; p < policies.size(); ++p) {
      const auto it = lookup.find({policies[p], ks[g]});
      if (it == lookup.end()) continue;
      const BenchCell& c = *it->second;
      const double x = gx - group_w * 0.4 + bar_w * static_cast<double>(p);
      const double top = kBottom - yr.unit(c.mean_off_count) * (kBottom - kTop);
      const char* fill = kPalette[p % kPaletteSize];
      out += "<rect x=\"" + px(x) + "\" y=\"" + px(top) + "\" width=\"" +
             px(bar_w * 0.9) + "\" height=\"" + px(kBottom - top) +
             "\" fill=\"" + fill + "\"/>\n";
      const double cx = x + bar_w * 0.45;
      const double w_hi =
          kBottom -
          yr.unit(std::min(c.mean_off_count + c.std_off_count, yr.hi)) *
              (kBottom - kTop);
      const double w_lo =
          kBottom - yr.unit(std::max(c.mean_off_count - c.std_off_count, 0.0)) *
                        (kBottom - kTop);
      out += "<line x1=\"" + px(cx) + "\" y1=\"" + px(w_hi) + "\" x2=\"" +
             px(cx) + "\" y2=\"" + px(w_lo) +
             "\" stroke=\"#111111\" stroke-width=\"1.5\"/>\n";
      out += "<line x1=\"" + px(cx - 4) + "\" y1=\"" + px(w_hi) + "\" x2=\"" +
             px(cx + 4) + "\" y2=\"" + px(w_hi) + "\" stroke=\"#111111\"/>\n";
      out += "<line x1=\"" + px(cx - 4) + "\" y1=\"" + px(w_lo) + "\" x2=\"" +
             px(cx + 4) + "\" y2=\"" + px(w_lo) + "\" stroke=\"#111111\"/>\n";
    }
  }
  double legend_x = kLeft + 10;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    const char* fill = kPalette[p % kPaletteSize];
    out += "<rect x=\"" + px(legend_x) + "\" y=\"" + px(kTop + 6) +
           "\" width=\"12\" height=\"12\" fill=\"" + fill + "\"/>\n";
    out += text(legend_x + 16, kTop + 16, policies[p]);
    legend_x += 26 + 7.0 * static_cast<double>(policies[p].size());
  }
  out += "</svg>\n";
  return out;
}

}  // namespace eslab::cli
