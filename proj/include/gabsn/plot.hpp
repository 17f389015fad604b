#pragma once

// Histogram and density-curve data for observed-vs-fitted plots.

#include <span>
#include <string>
#include <vector>

#include "gabsn/zoo.hpp"

namespace gabsn {

struct Histogram {
  std::vector<double> edges;    // bins + 1 edges
  std::vector<int> counts;
  std::vector<double> density;  // counts / (n * width)
  std::string rule;             // "freedman-diaconis" or "sturges"
};

/// Freedman-Diaconis bins (width 2 IQR n^(-1/3)); Sturges (ceil(log2 n) + 1)
/// when n < 30 or the IQR is zero. Bins span [min, max], the last one closed.
Histogram histogram(std::span<const double> data);

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// `points` evenly spaced abscissae over [min - 10% range, max + 10% range].
std::vector<double> curve_grid(std::span<const double> data, int points = 512);

Curve density_curve(std::span<const double> data, const ModelSpec& model,
                    std::span<const double> params, std::string label, int points = 512);

/// CSV with header `series,x,y`; histogram rows use the bin midpoints.
std::string plot_csv(const Histogram& h, std::span<const Curve> curves);

}  // namespace gabsn
