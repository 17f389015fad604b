#pragma once

// Closed-form CDF, moments, shape coefficients and limiting-case moments.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "gabsn/core.hpp"
#include "gabsn/types.hpp"

namespace gabsn {

/// c1 = 15 + 20 l^2 + 8 l^4
double moment_c1(double lambda);
/// c2 = 35 + 70 l^2 + 56 l^4 + 16 l^6
double moment_c2(double lambda);
/// c3 = 315 + 8 l^2 (105 + 126 l^2 + 72 l^4 + 16 l^6)
double moment_c3(double lambda);

/// E[Z^k] for Z ~ SN(lambda), 0 <= k <= 12. Even orders are (k-1)!!; odd
/// orders are b delta P_k(lambda) / (1 + lambda^2)^((k-1)/2) with
/// P_1 = 1, P_3 = 3 + 2 lambda^2, P_5 = c1, P_7 = 3 c2, P_9 = 3 c3,
/// P_11 = 30 (1 + lambda^2) c3 + 945.
double sn_raw_moment(int k, double lambda);

/// E[X^k], k in 1..4, through the skew-normal moment expansion
/// (1/C)[m_k - a m_{k+1} + a^2/2 m_{k+2} - b m_{k+3} + ab m_{k+4} + b^2/2 m_{k+6}].
double raw_moment(int k, const ShapeParams& p);

/// Var(X) in the single-fraction form (C E2 - E1^2) / C^2, where E1, E2 are
/// the bracketed numerators of the first two moments.
double variance_closed_form(const ShapeParams& p);

struct MomentSet {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double variance = 0.0;
  double skewness_b1 = 0.0;  // squared skewness
  double kurtosis_b2 = 0.0;
  bool degenerate = false;  // variance < 1e-12
};

MomentSet moment_set(const ShapeParams& p);

/// int_{-inf}^{z} t^k phi(t) Phi(lambda t) dt for 0 <= k <= 12, by the
/// integration-by-parts recursion
///   J_k = -z^{k-1} phi(z) Phi(lz) + (k-1) J_{k-2} + l/sqrt(2 pi) s^{-k} N_{k-1}(s z),
/// s = sqrt(1 + l^2), N_j(x) = int_{-inf}^x u^j phi(u) du, J_0 = Phi(z; l)/2.
double partial_moment(int k, double z, double lambda);

/// CDF assembled from the partial moments of orders 0, 1, 2, 3, 4 and 6.
double cdf(double z, const ShapeParams& p);

enum class BoundTarget { Mean, Variance, SkewB1, KurtB2 };

std::string_view bound_target_name(BoundTarget t);
std::optional<BoundTarget> parse_bound_target(std::string_view name);

double evaluate_target(BoundTarget t, const ShapeParams& p);

struct ParamBox {
  std::array<double, 3> lower{-20.0, -20.0, -20.0};  // alpha, beta, lambda
  std::array<double, 3> upper{20.0, 20.0, 20.0};
};

struct BoundSearchOptions {
  ParamBox box{};
  int starts = 1000;
  std::uint64_t seed = 20190614;
  int threads = 0;  // 0: hardware concurrency
};

struct BoundResult {
  double min = 0.0;
  double max = 0.0;
  ShapeParams argmin;
  ShapeParams argmax;
  long evaluations = 0;
};

/// Multi-start bounded Nelder-Mead for the extrema of a moment functional.
BoundResult bound_search(BoundTarget target, const BoundSearchOptions& options = {});

struct LimitMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> skewness_b1;
  std::optional<double> kurtosis_b2;
};

/// Closed-form moments of the limiting families. GBN kinds read p.lambda and
/// also return b1, b2; Half kinds (lambda -> +/-inf) read p.alpha, p.beta.
LimitMoments limit_moments(LimitKind kind, const ShapeParams& p);

}  // namespace gabsn
