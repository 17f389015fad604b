#include "gabsn/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace gabsn {
namespace {

// linearly interpolated sample quantile of sorted data
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Histogram histogram(std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("histogram: empty sample");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  const double lo = s.front();
  const double hi = s.back();
  const double iqr = quantile(s, 0.75) - quantile(s, 0.25);

  Histogram h;
  int bins = 1;
  if (hi > lo) {
    if (s.size() >= 30 && iqr > 0.0) {
      h.rule = "freedman-diaconis";
      const double width = 2.0 * iqr / std::cbrt(n);
      bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    } else {
      h.rule = "sturges";
      bins = static_cast<int>(std::ceil(std::log2(n))) + 1;
    }
  } else {
    h.rule = "sturges";
  }
  const double left = hi > lo ? lo : lo - 0.5;
  const double right = hi > lo ? hi : hi + 0.5;
  const double width = (right - left) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? right : left + i * width);
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : s) {
    auto i = static_cast<int>((v - left) / width);
    i = std::clamp(i, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(i)];
  }
  for (int c : h.counts) h.density.push_back(c / (n * width));
  return h;
}

std::vector<double> curve_grid(std::span<const double> data, int points) {
  if (data.empty()) throw std::invalid_argument("curve_grid: empty sample");
  if (points < 2) throw std::invalid_argument("curve_grid: need at least 2 points");
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  double range = *mx - *mn;
  if (range == 0.0) range = 1.0;
  const double a = *mn - 0.1 * range;
  const double b = *mx + 0.1 * range;
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) x[i] = a + (b - a) * i / (points - 1);
  return x;
}

Curve density_curve(std::span<const double> data, const ModelSpec& model,
                    std::span<const double> params, std::string label, int points) {
  Curve c;
  c.label = std::move(label);
  c.x = curve_grid(data, points);
  c.y.reserve(c.x.size());
  for (double x : c.x) c.y.push_back(model.density(x, params));
  return c;
}

std::string plot_csv(const Histogram& h, std::span<const Curve> curves) {
  std::ostringstream out;
  out << "series,x,y\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << fmt::format("histogram,{},{}\n", 0.5 * (h.edges[i] + h.edges[i + 1]), h.density[i]);
  }
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.x.size(); ++i) out << fmt::format("{},{},{}\n", c.label, c.x[i], c.y[i]);
  }
  return out.str();
}

}  // namespace gabsn
