#include "gabsn/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gabsn/types.hpp"

namespace gabsn {
namespace {

constexpr int kGaussPoints = 20;

struct GaussLegendre {
  std::array<double, kGaussPoints> node{};
  std::array<double, kGaussPoints> weight{};
};

// Nodes/weights on [-1, 1] by Newton iteration on P_n.
GaussLegendre make_gauss_legendre() {
  GaussLegendre rule;
  constexpr int n = kGaussPoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.node[i] = -x;
    rule.node[n - 1 - i] = x;
    rule.weight[i] = w;
    rule.weight[n - 1 - i] = w;
  }
  return rule;
}

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule = make_gauss_legendre();
  return rule;
}

// T(h, a) for h >= 0, 0 <= a <= 1.
double owens_t_reduced(double h, double a) {
  if (a == 0.0) return 0.0;
  if (h == 0.0) return std::atan(a) / (2.0 * std::numbers::pi);
  const double hh = 0.5 * h * h;
  if (hh > 745.0) return 0.0;

  const auto& gl = gauss_legendre();
  const int panels = 1 + static_cast<int>(h * a);
  const double width = a / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    double s = 0.0;
    for (int i = 0; i < kGaussPoints; ++i) {
      const double x = mid + 0.5 * width * gl.node[i];
      const double q = 1.0 + x * x;
      s += gl.weight[i] * std::exp(-hh * q) / q;
    }
    sum += 0.5 * width * s;
  }
  return sum / (2.0 * std::numbers::pi);
}

}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_norm_cdf(double x) {
  if (x > -35.0) {
    if (x > 5.0) return std::log1p(-norm_sf(x));
    return std::log(norm_cdf(x));
  }
  // Phi(x) ~ phi(x)/(-x) * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - 945/x^10)
  const double r = 1.0 / (x * x);
  const double series = 1.0 - r * (1.0 - r * (3.0 - r * (15.0 - r * (105.0 - r * 945.0))));
  return -0.5 * x * x - kLogSqrt2Pi - std::log(-x) + std::log(series);
}

double inv_mills(double x) {
  if (x > -35.0) return norm_pdf(x) / norm_cdf(x);
  return std::exp(-0.5 * x * x - kLogSqrt2Pi - log_norm_cdf(x));
}

double owens_t(double h, double a) {
  if (std::isnan(h) || std::isnan(a)) return std::numeric_limits<double>::quiet_NaN();
  const double sign = a < 0.0 ? -1.0 : 1.0;
  h = std::abs(h);
  a = std::abs(a);
  if (std::isinf(a)) return sign * 0.5 * norm_sf(h);
  if (a <= 1.0) return sign * owens_t_reduced(h, a);
  const double ah = a * h;
  const double qh = norm_sf(h);
  const double qah = norm_sf(ah);
  return sign * (0.5 * (qh + qah) - qh * qah - owens_t_reduced(ah, 1.0 / a));
}

double sn_cdf(double z, double lambda) {
  if (z == std::numeric_limits<double>::infinity()) return 1.0;
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  const double v = norm_cdf(z) - 2.0 * owens_t(z, lambda);
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace gabsn
