#include "gabsn/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gabsn/oracle.hpp"
#include "gabsn/special.hpp"

namespace gabsn {

double normalizing_constant(const ShapeParams& p) {
  const double a = p.alpha;
  const double b = p.beta;
  const double l2 = p.lambda * p.lambda;
  const double bd = kB * p.delta();
  return 1.0 + 3.0 * a * b - a * bd - b * bd * (3.0 + 2.0 * l2) / (1.0 + l2) + 0.5 * a * a +
         7.5 * b * b;
}

double absn_normalizer(double alpha, double beta) {
  return 2.0 + alpha * alpha + 15.0 * beta * beta + 6.0 * alpha * beta;
}

double pdf(double z, const ShapeParams& p) {
  if (std::isinf(z)) return 0.0;
  return skew_factor(z, p.alpha, p.beta) * norm_pdf(z) * norm_cdf(p.lambda * z) /
         normalizing_constant(p);
}

double log_pdf(double z, const ShapeParams& p) {
  if (std::isinf(z)) return -std::numeric_limits<double>::infinity();
  return std::log(skew_factor(z, p.alpha, p.beta)) - 0.5 * z * z - kLogSqrt2Pi +
         log_norm_cdf(p.lambda * z) - std::log(normalizing_constant(p));
}

double pdf_loc_scale(double y, const LocScaleParams& p) {
  require_positive_scale(p.sigma, "pdf_loc_scale");
  return pdf((y - p.mu) / p.sigma, p.shape) / p.sigma;
}

double log_pdf_loc_scale(double y, const LocScaleParams& p) {
  require_positive_scale(p.sigma, "log_pdf_loc_scale");
  return log_pdf((y - p.mu) / p.sigma, p.shape) - std::log(p.sigma);
}

double pdf_log_gabsn(double z, const ShapeParams& p) {
  if (!(z > 0.0)) {
    throw std::invalid_argument("pdf_log_gabsn: support is z > 0, got " + std::to_string(z));
  }
  return pdf(std::log(z), p) / z;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Normal: return "Normal";
    case Family::SN: return "SN";
    case Family::ABSN: return "ABSN";
    case Family::GASN: return "GASN";
    case Family::GBSN: return "GBSN";
    case Family::GABSN: return "GABSN";
  }
  return "?";
}

Family reduce_family(const ShapeParams& p) {
  const bool a0 = p.alpha == 0.0;
  const bool b0 = p.beta == 0.0;
  const bool l0 = p.lambda == 0.0;
  if (a0 && b0 && l0) return Family::Normal;
  if (a0 && b0) return Family::SN;
  if (l0) return Family::ABSN;
  if (b0) return Family::GASN;
  if (a0) return Family::GBSN;
  return Family::GABSN;
}

double subfamily_pdf(Family family, double z, const ShapeParams& p) {
  const double phi = norm_pdf(z);
  const double l2 = p.lambda * p.lambda;
  const double bd = kB * p.delta();
  switch (family) {
    case Family::Normal:
      return phi;
    case Family::SN:
      return 2.0 * phi * norm_cdf(p.lambda * z);
    case Family::ABSN: {
      const double d = 1.0 - p.alpha * z - p.beta * z * z * z;
      return (d * d + 1.0) / absn_normalizer(p.alpha, p.beta) * phi;
    }
    case Family::GASN: {
      const double d = 1.0 - p.alpha * z;
      return (d * d + 1.0) / (1.0 - p.alpha * bd + 0.5 * p.alpha * p.alpha) * phi *
             norm_cdf(p.lambda * z);
    }
    case Family::GBSN: {
      const double d = 1.0 - p.beta * z * z * z;
      const double c = 1.0 - p.beta * bd * (3.0 + 2.0 * l2) / (1.0 + l2) + 7.5 * p.beta * p.beta;
      return (d * d + 1.0) / c * phi * norm_cdf(p.lambda * z);
    }
    case Family::GABSN:
      return pdf(z, p);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double half_line_normalizer(bool plus, double alpha, double beta) {
  const double s = plus ? 1.0 : -1.0;
  return 1.0 - s * alpha * kB - s * 2.0 * beta * kB + 3.0 * alpha * beta + 0.5 * alpha * alpha +
         7.5 * beta * beta;
}

double limiting_pdf(LimitKind kind, double z, const ShapeParams& p) {
  if (std::isinf(z)) return 0.0;
  switch (kind) {
    case LimitKind::GBN2:
      return 2.0 * z * z * norm_pdf(z) * norm_cdf(p.lambda * z);
    case LimitKind::GBN6: {
      const double z3 = z * z * z;
      return 2.0 * z3 * z3 / 15.0 * norm_pdf(z) * norm_cdf(p.lambda * z);
    }
    case LimitKind::HalfPlus:
      if (!(z > 0.0)) return 0.0;
      return skew_factor(z, p.alpha, p.beta) / half_line_normalizer(true, p.alpha, p.beta) *
             norm_pdf(z);
    case LimitKind::HalfMinus:
      if (!(z < 0.0)) return 0.0;
      return skew_factor(z, p.alpha, p.beta) / half_line_normalizer(false, p.alpha, p.beta) *
             norm_pdf(z);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

ModeReport count_modes(const ShapeParams& p, double lo, double hi, int grid_size) {
  if (grid_size < 3 || !(hi > lo)) {
    throw std::invalid_argument("count_modes: need hi > lo and at least 3 grid points");
  }
  const double step = (hi - lo) / (grid_size - 1);
  std::vector<double> f(static_cast<std::size_t>(grid_size));
  // log scale: in the tails pdf sinks into subnormals whose rounding makes
  // spurious local maxima
  for (int i = 0; i < grid_size; ++i) f[i] = log_pdf(lo + i * step, p);

  auto density = [&p](double z) { return log_pdf(z, p); };
  std::vector<double> modes;
  for (int i = 1; i + 1 < grid_size; ++i) {
    if (!(f[i] > f[i - 1] && f[i] >= f[i + 1])) continue;
    const double left = lo + (i - 1) * step;
    const double right = lo + (i + 1) * step;
    const double z = oracle::maximize_1d(density, left, right, 1e-10).argmax;
    if (modes.empty() || std::abs(z - modes.back()) > 1e-6) {
      if (!modes.empty() && z - modes.back() < step) {
        throw ModeResolutionError("count_modes: maxima at " + std::to_string(modes.back()) +
                                  " and " + std::to_string(z) +
                                  " are closer than the grid spacing; increase grid size");
      }
      modes.push_back(z);
    }
  }
  return {static_cast<int>(modes.size()), modes};
}

}  // namespace gabsn
