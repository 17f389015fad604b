#include "gabsn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "gabsn/optimize.hpp"
#include "gabsn/rng.hpp"
#include "gabsn/special.hpp"

namespace gabsn {
namespace {

constexpr int kMaxSnOrder = 12;

double double_factorial(int n) {
  double r = 1.0;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

// All SN raw moments 0..max_k at once.
std::array<double, kMaxSnOrder + 1> sn_moments(double lambda) {
  std::array<double, kMaxSnOrder + 1> m{};
  for (int k = 0; k <= kMaxSnOrder; ++k) m[k] = sn_raw_moment(k, lambda);
  return m;
}

// Bracketed numerator of E[X^k] from precomputed SN moments.
double moment_numerator(int k, const ShapeParams& p, const std::array<double, kMaxSnOrder + 1>& m) {
  const double a = p.alpha;
  const double b = p.beta;
  return m[k] - a * m[k + 1] + 0.5 * a * a * m[k + 2] - b * m[k + 3] + a * b * m[k + 4] +
         0.5 * b * b * m[k + 6];
}

}  // namespace

double moment_c1(double lambda) {
  const double l2 = lambda * lambda;
  return 15.0 + 20.0 * l2 + 8.0 * l2 * l2;
}

double moment_c2(double lambda) {
  const double l2 = lambda * lambda;
  return 35.0 + 70.0 * l2 + 56.0 * l2 * l2 + 16.0 * l2 * l2 * l2;
}

double moment_c3(double lambda) {
  const double l2 = lambda * lambda;
  return 315.0 + 8.0 * l2 * (105.0 + 126.0 * l2 + 72.0 * l2 * l2 + 16.0 * l2 * l2 * l2);
}

double sn_raw_moment(int k, double lambda) {
  if (k < 0 || k > kMaxSnOrder) {
    throw std::invalid_argument("sn_raw_moment: order must be in [0, 12], got " + std::to_string(k));
  }
  if (k % 2 == 0) return double_factorial(k - 1);
  const double l2 = lambda * lambda;
  const double q = 1.0 + l2;
  const double bd = kB * lambda / std::sqrt(q);
  switch (k) {
    case 1: return bd;
    case 3: return bd * (3.0 + 2.0 * l2) / q;
    case 5: return bd * moment_c1(lambda) / (q * q);
    case 7: return bd * 3.0 * moment_c2(lambda) / (q * q * q);
    case 9: return bd * 3.0 * moment_c3(lambda) / std::pow(q, 4);
    case 11: return bd * (30.0 * q * moment_c3(lambda) + 945.0) / std::pow(q, 5);
    default: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double raw_moment(int k, const ShapeParams& p) {
  if (k < 1 || k > 4) {
    throw std::invalid_argument("raw_moment: order must be in [1, 4], got " + std::to_string(k));
  }
  return moment_numerator(k, p, sn_moments(p.lambda)) / normalizing_constant(p);
}

double variance_closed_form(const ShapeParams& p) {
  const double a = p.alpha;
  const double b = p.beta;
  const double l2 = p.lambda * p.lambda;
  const double q = 1.0 + l2;
  const double bd = kB * p.delta();
  const double c1 = moment_c1(p.lambda);
  const double c2 = moment_c2(p.lambda);
  const double c = normalizing_constant(p);
  const double e1 = -a - 3.0 * b + bd + bd * a * a * (3.0 + 2.0 * l2) / (2.0 * q) +
                    bd * a * b * c1 / (q * q) + 3.0 * bd * b * b * c2 / (2.0 * q * q * q);
  const double e2 = 1.0 + 15.0 * a * b + 1.5 * a * a + 52.5 * b * b -
                    bd * a * (3.0 + 2.0 * l2) / q - bd * b * c1 / (q * q);
  return (c * e2 - e1 * e1) / (c * c);
}

MomentSet moment_set(const ShapeParams& p) {
  const auto m = sn_moments(p.lambda);
  const double c = normalizing_constant(p);
  MomentSet s;
  s.m1 = moment_numerator(1, p, m) / c;
  s.m2 = moment_numerator(2, p, m) / c;
  s.m3 = moment_numerator(3, p, m) / c;
  s.m4 = moment_numerator(4, p, m) / c;
  const double mu = s.m1;
  s.variance = s.m2 - mu * mu;
  const double central3 = s.m3 - 3.0 * s.m2 * mu + 2.0 * mu * mu * mu;
  const double central4 = s.m4 - 4.0 * s.m3 * mu + 6.0 * s.m2 * mu * mu - 3.0 * mu * mu * mu * mu;
  s.degenerate = s.variance < 1e-12;
  s.skewness_b1 = central3 * central3 / (s.variance * s.variance * s.variance);
  s.kurtosis_b2 = central4 / (s.variance * s.variance);
  return s;
}

double partial_moment(int k, double z, double lambda) {
  if (k < 0 || k > kMaxSnOrder) {
    throw std::invalid_argument("partial_moment: order must be in [0, 12], got " +
                                std::to_string(k));
  }
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  const bool at_inf = std::isinf(z);
  const double s = std::sqrt(1.0 + lambda * lambda);
  const double x = s * z;
  const double phi_z = at_inf ? 0.0 : norm_pdf(z);
  const double phi_x = at_inf ? 0.0 : norm_pdf(x);
  const double big_phi_lz = at_inf ? 1.0 : norm_cdf(lambda * z);

  // N_j(x) for j = 0..k-1
  std::array<double, kMaxSnOrder + 1> n{};
  n[0] = at_inf ? 1.0 : norm_cdf(x);
  if (k >= 2) n[1] = -phi_x;
  for (int j = 2; j < k; ++j) {
    const double lead = at_inf ? 0.0 : -std::pow(x, j - 1) * phi_x;
    n[j] = lead + (j - 1) * n[j - 2];
  }

  std::array<double, kMaxSnOrder + 1> jk{};
  jk[0] = 0.5 * sn_cdf(z, lambda);
  const double c = lambda * kInvSqrt2Pi;
  for (int i = 1; i <= k; ++i) {
    const double lead = at_inf ? 0.0 : -std::pow(z, i - 1) * phi_z * big_phi_lz;
    const double prev = i >= 2 ? (i - 1) * jk[i - 2] : 0.0;
    jk[i] = lead + prev + c * std::pow(s, -i) * n[i - 1];
  }
  return jk[k];
}

double cdf(double z, const ShapeParams& p) {
  if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
  if (z == std::numeric_limits<double>::infinity()) return 1.0;
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  const double a = p.alpha;
  const double b = p.beta;
  const double l = p.lambda;
  const double total = 2.0 * partial_moment(0, z, l) - 2.0 * a * partial_moment(1, z, l) +
                       a * a * partial_moment(2, z, l) - 2.0 * b * partial_moment(3, z, l) +
                       2.0 * a * b * partial_moment(4, z, l) + b * b * partial_moment(6, z, l);
  return std::clamp(total / normalizing_constant(p), 0.0, 1.0);
}

std::string_view bound_target_name(BoundTarget t) {
  switch (t) {
    case BoundTarget::Mean: return "mean";
    case BoundTarget::Variance: return "variance";
    case BoundTarget::SkewB1: return "skew_b1";
    case BoundTarget::KurtB2: return "kurt_b2";
  }
  return "?";
}

std::optional<BoundTarget> parse_bound_target(std::string_view name) {
  for (auto t : {BoundTarget::Mean, BoundTarget::Variance, BoundTarget::SkewB1,
                 BoundTarget::KurtB2}) {
    if (bound_target_name(t) == name) return t;
  }
  if (name == "b1") return BoundTarget::SkewB1;
  if (name == "b2") return BoundTarget::KurtB2;
  return std::nullopt;
}

double evaluate_target(BoundTarget t, const ShapeParams& p) {
  if (t == BoundTarget::Mean) return raw_moment(1, p);
  const MomentSet m = moment_set(p);
  switch (t) {
    case BoundTarget::Variance: return m.variance;
    case BoundTarget::SkewB1: return m.skewness_b1;
    case BoundTarget::KurtB2: return m.kurtosis_b2;
    default: break;
  }
  return m.m1;
}

BoundResult bound_search(BoundTarget target, const BoundSearchOptions& options) {
  if (options.starts < 1) throw std::invalid_argument("bound_search: need at least one start");
  const auto& box = options.box;
  opt::Box obox{{box.lower.begin(), box.lower.end()}, {box.upper.begin(), box.upper.end()}};
  opt::NelderMeadOptions nm;
  nm.box = obox;
  nm.max_evals = 4000;
  nm.ftol = 1e-14;
  nm.xtol = 1e-10;

  std::array<double, 3> step{};
  for (int i = 0; i < 3; ++i) step[i] = 0.05 * (box.upper[i] - box.lower[i]);

  struct Local {
    double value;
    std::array<double, 3> x;
    long evals;
  };

  // sign = +1 minimizes the target, -1 maximizes it.
  auto run_start = [&](int index, double sign) {
    Rng rng = Rng(options.seed).split(static_cast<std::uint64_t>(index));
    std::array<double, 3> x0{};
    for (int i = 0; i < 3; ++i) x0[i] = rng.uniform(box.lower[i], box.upper[i]);
    auto f = [&](std::span<const double> x) {
      const double v = evaluate_target(target, {x[0], x[1], x[2]});
      return std::isfinite(v) ? sign * v : std::numeric_limits<double>::infinity();
    };
    const opt::Minimum m = opt::nelder_mead_restarts(f, x0, step, nm, 3);
    return Local{sign * m.f, {m.x[0], m.x[1], m.x[2]}, m.evals};
  };

  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, 64);

  // Each worker handles a strided slice; results land in index order so the
  // reduction below does not depend on scheduling.
  std::vector<Local> lows(static_cast<std::size_t>(options.starts));
  std::vector<Local> highs(static_cast<std::size_t>(options.starts));
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t) {
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (int i = static_cast<int>(t); i < options.starts; i += static_cast<int>(threads)) {
        lows[i] = run_start(i, 1.0);
        highs[i] = run_start(i, -1.0);
      }
    }));
  }
  for (auto& j : jobs) j.get();

  auto better = [](const Local& a, const Local& b, bool minimize) {
    if (a.value != b.value) return minimize ? a.value < b.value : a.value > b.value;
    return a.x < b.x;
  };
  BoundResult r;
  Local lo = lows.front();
  Local hi = highs.front();
  for (int i = 0; i < options.starts; ++i) {
    if (better(lows[i], lo, true)) lo = lows[i];
    if (better(highs[i], hi, false)) hi = highs[i];
    r.evaluations += lows[i].evals + highs[i].evals;
  }
  r.min = lo.value;
  r.max = hi.value;
  r.argmin = {lo.x[0], lo.x[1], lo.x[2]};
  r.argmax = {hi.x[0], hi.x[1], hi.x[2]};
  return r;
}

LimitMoments limit_moments(LimitKind kind, const ShapeParams& p) {
  const double pi = std::numbers::pi;
  LimitMoments out;
  switch (kind) {
    case LimitKind::GBN2: {
      const double l = p.lambda;
      const double l2 = l * l;
      const double q = 1.0 + l2;
      const double t = 3.0 + 2.0 * l2;
      const double d = 3.0 * pi * q * q * q - 2.0 * l2 * t * t;
      out.mean = kB * p.delta() * t / q;
      out.variance = d / (pi * q * q * q);
      const double s = -4.0 * l2 * l * t * t * t + pi * l * q * q * (12.0 + 25.0 * l2 + 10.0 * l2 * l2);
      out.skewness_b1 = 2.0 * s * s / (d * d * d);
      const double lq = l + l2 * l;
      out.kurtosis_b2 = (15.0 * pi * pi * std::pow(q, 6) - 12.0 * l2 * l2 * std::pow(t, 4) +
                         4.0 * pi * lq * lq * (-9.0 + 9.0 * l2 + 16.0 * l2 * l2 + 4.0 * l2 * l2 * l2)) /
                        (d * d);
      return out;
    }
    case LimitKind::GBN6: {
      const double l = p.lambda;
      const double l2 = l * l;
      const double q = 1.0 + l2;
      const double c2 = moment_c2(l);
      const double c4 = 420.0 + 1365.0 * l2 + 1638.0 * l2 * l2 + 936.0 * std::pow(l2, 3) +
                        208.0 * std::pow(l2, 4);
      const double c5 = 21.0 + 105.0 * l2 + 126.0 * l2 * l2 + 72.0 * std::pow(l2, 3) +
                        16.0 * std::pow(l2, 4);
      const double q7 = std::pow(q, 7);
      const double c6 = 7.0 - 2.0 * l2 * c2 * c2 / (25.0 * pi * q7);
      out.mean = kB * p.delta() * c2 / (5.0 * q * q * q);
      out.variance = (175.0 * pi * q7 - 2.0 * l2 * c2 * c2) / (25.0 * pi * q7);
      const double s = 4.0 * l2 * c2 * c2 * c2 - 25.0 * pi * std::pow(q, 6) * c4;
      out.skewness_b1 =
          2.0 * l2 * s * s / (15625.0 * pi * pi * pi * std::pow(q, 21) * c6 * c6 * c6);
      out.kurtosis_b2 = (39375.0 * pi * pi * std::pow(q, 14) - 12.0 * l2 * l2 * std::pow(c2, 4) +
                         500.0 * pi * l2 * std::pow(q, 6) * c2 * c5) /
                        (625.0 * pi * pi * std::pow(q, 14) * c6 * c6);
      return out;
    }
    case LimitKind::HalfPlus:
    case LimitKind::HalfMinus: {
      const double a = p.alpha;
      const double b = p.beta;
      const double r2pi = std::sqrt(2.0 * pi);
      const double s = kind == LimitKind::HalfPlus ? 1.0 : -1.0;
      // lambda -> -inf mirrors lambda -> +inf with the signs of the odd terms flipped.
      const double den = 2.0 - s * 2.0 * kB * a + a * a - s * 4.0 * kB * b + 6.0 * a * b + 15.0 * b * b;
      const double inner =
          2.0 - s * r2pi * a + 2.0 * a * a - s * 3.0 * r2pi * b + 16.0 * a * b + 48.0 * b * b;
      out.mean = s * kB * inner / den;
      out.variance = -2.0 * inner * inner / (pi * den * den) +
                     (2.0 - s * 4.0 * kB * a + 3.0 * a * a - s * 16.0 * kB * b + 30.0 * a * b +
                      105.0 * b * b) /
                         den;
      return out;
    }
  }
  return out;
}

}  // namespace gabsn
