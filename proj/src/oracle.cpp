#include "gabsn/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

namespace gabsn::oracle {
namespace {

constexpr unsigned kMaxDepth = 18;

struct Piece {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

Piece gk_finite(const Fn1& f, double a, double b, double tol) {
  Piece p;
  p.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, tol,
                                                                           &p.error, &p.l1);
  return p;
}

// [c, inf) via x = c + t / (1 - t), t in [0, 1).
Piece gk_upper(const Fn1& f, double c, double tol) {
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    const double v = f(c + t / u) / (u * u);
    return std::isfinite(v) ? v : 0.0;
  };
  return gk_finite(g, 0.0, 1.0, tol);
}

// (-inf, c] via x = c - t / (1 - t).
Piece gk_lower(const Fn1& f, double c, double tol) {
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    const double v = f(c - t / u) / (u * u);
    return std::isfinite(v) ? v : 0.0;
  };
  return gk_finite(g, 0.0, 1.0, tol);
}

Piece integrate_piece(const Fn1& f, double a, double b, double tol) {
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return gk_finite(f, a, b, tol);
  if (lo_inf && hi_inf) {
    const Piece l = gk_lower(f, 0.0, tol);
    const Piece u = gk_upper(f, 0.0, tol);
    return {l.value + u.value, l.error + u.error, l.l1 + u.l1};
  }
  if (hi_inf) return gk_upper(f, a, tol);
  return gk_lower(f, b, tol);
}

}  // namespace

QuadratureResult integrate(const Fn1& f, double a, double b, double tol) {
  return integrate(f, a, b, std::span<const double>{}, tol);
}

QuadratureResult integrate(const Fn1& f, double a, double b, std::span<const double> breaks,
                           double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be > 0");
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (a == b) return {};

  long evals = 0;
  Fn1 counted = [&](double x) {
    ++evals;
    return f(x);
  };

  std::vector<double> cuts{a};
  for (double x : breaks) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);

  Piece total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    const Piece p = integrate_piece(counted, cuts[i], cuts[i + 1], tol);
    total.value += p.value;
    total.error += p.error;
    total.l1 += p.l1;
  }

  QuadratureResult out{sign * total.value, total.error, evals};
  if (!std::isfinite(total.value) || total.error > tol * std::max(1.0, total.l1)) {
    throw QuadratureError(
        fmt::format("integrate: tolerance {:.3e} not met, error estimate {:.3e}", tol, total.error),
        out);
  }
  return out;
}

std::vector<double> finite_diff_grad(const FnN& f, std::span<const double> x, double h) {
  std::vector<double> grad(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = probe[i];
    probe[i] = xi + h;
    const double fp = f(probe);
    probe[i] = xi - h;
    const double fm = f(probe);
    probe[i] = xi;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

Maximum maximize_1d(const Fn1& f, double lo, double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  constexpr double inv_phi = 0.61803398874989484820;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Maximum best{c, fc};
  if (fd > best.max) best = {d, fd};
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best.max) best = {x, fx};
  }
  return best;
}

}  // namespace gabsn::oracle
