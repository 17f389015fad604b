#pragma once

// Independent numerical machinery used to check closed forms: adaptive
// quadrature, central finite differences and golden-section maximization.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabsn::oracle {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long n_evals = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  [[nodiscard]] const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

using Fn1 = std::function<double(double)>;

/// Adaptive 61-point Gauss-Kronrod on [a, b]; either end may be infinite.
///
/// Infinite ranges are split at 0 (or at the finite endpoint) and each
/// half-line is mapped onto a finite interval with x = c +/- t / (1 - t).
/// Succeeds when the error estimate is below tol * max(1, int |f|); otherwise
/// throws QuadratureError carrying the best estimate.
QuadratureResult integrate(const Fn1& f, double a, double b, double tol = 1e-10);

/// As integrate(), additionally splitting [a, b] at the given interior points.
QuadratureResult integrate(const Fn1& f, double a, double b, std::span<const double> breaks,
                           double tol = 1e-10);

using FnN = std::function<double(std::span<const double>)>;

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> finite_diff_grad(const FnN& f, std::span<const double> x, double h = 1e-6);

struct Maximum {
  double argmax = 0.0;
  double max = 0.0;
};

/// Golden-section search for a local maximum of f on [lo, hi] to within tol in x.
Maximum maximize_1d(const Fn1& f, double lo, double hi, double tol = 1e-10);

}  // namespace gabsn::oracle
