#pragma once

// The generalized alpha-beta-skew-normal density family
//
//   f(z) = [(1 - a z - b z^3)^2 + 1] phi(z) Phi(l z) / C(a, b, l)
//
// with its location-scale and log variants, subfamily reductions, limiting
// families and numerical mode counting.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gabsn/types.hpp"

namespace gabsn {

/// (1 - a z - b z^3)^2 + 1
inline double skew_factor(double z, double alpha, double beta) {
  const double d = 1.0 - alpha * z - beta * z * z * z;
  return d * d + 1.0;
}

/// C(a, b, l) = 1 + 3ab - a b_ d - b b_ d (3 + 2l^2)/(1 + l^2) + a^2/2 + 15 b^2/2.
/// Always >= 1/2.
double normalizing_constant(const ShapeParams& p);

/// 2 + a^2 + 15 b^2 + 6 a b, the alpha-beta-skew-normal normalizer (= 2 C(a, b, 0)).
double absn_normalizer(double alpha, double beta);

double pdf(double z, const ShapeParams& p);
double log_pdf(double z, const ShapeParams& p);

double pdf_loc_scale(double y, const LocScaleParams& p);
double log_pdf_loc_scale(double y, const LocScaleParams& p);

/// Density of exp(Z) for Z ~ GABSN(p); throws for z <= 0.
double pdf_log_gabsn(double z, const ShapeParams& p);

enum class Family { Normal, SN, ABSN, GASN, GBSN, GABSN };

std::string_view family_name(Family f);

/// Most specific named subfamily containing p. Ties go to the earlier entry
/// of Normal, SN, ABSN, GASN, GBSN.
Family reduce_family(const ShapeParams& p);

/// Density of the named subfamily evaluated from its own published form,
/// using only the parameters the subfamily keeps.
double subfamily_pdf(Family family, double z, const ShapeParams& p);

enum class LimitKind {
  GBN2,       // alpha -> +/-inf: 2 z^2 phi(z) Phi(l z)
  GBN6,       // beta -> +/-inf: 2 z^6 phi(z) Phi(l z) / 15
  HalfPlus,   // lambda -> +inf: support z > 0
  HalfMinus,  // lambda -> -inf: support z < 0
};

/// Normalizer of the lambda -> +inf (plus = true) or -inf half-line limit:
/// 1 -/+ a b_ -/+ 2 b b_ + 3ab + a^2/2 + 15 b^2/2.
double half_line_normalizer(bool plus, double alpha, double beta);

/// Limit densities. GBN kinds read p.lambda; Half kinds read p.alpha, p.beta.
double limiting_pdf(LimitKind kind, double z, const ShapeParams& p);

struct ModeReport {
  int count = 0;
  std::vector<double> locations;
};

class ModeResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts strict local maxima of log pdf on an even grid over [lo, hi], refining
/// each by golden-section search to 1e-10 and merging maxima within 1e-6.
/// Throws ModeResolutionError if two distinct refined maxima are closer than
/// the grid spacing.
ModeReport count_modes(const ShapeParams& p, double lo = -10.0, double hi = 10.0,
                       int grid_size = 10000);

}  // namespace gabsn
