#pragma once

// Likelihood, score, maximum-likelihood fitting and likelihood-ratio tests.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gabsn/types.hpp"
#include "gabsn/zoo.hpp"

namespace gabsn {

/// Returned in place of -inf when some density evaluates to zero.
inline constexpr double kLogLikSentinel = -1e300;

struct LogLik {
  double value = 0.0;
  bool underflow = false;  // some point had zero density; value is the sentinel
};

/// sum_i log f(y_i; p) for the location-scale GABSN.
LogLik evaluate_loglik(std::span<const double> data, const LocScaleParams& p);
double loglik(std::span<const double> data, const LocScaleParams& p);

/// Same for any zoo model.
LogLik evaluate_loglik(std::span<const double> data, const ModelSpec& model,
                       std::span<const double> params);

/// Analytic gradient of loglik in the order (alpha, beta, lambda, mu, sigma).
std::array<double, 5> score(std::span<const double> data, const LocScaleParams& p);

struct FitOptions {
  std::uint64_t seed = 1;
  long global_budget = 20000;  // annealing evaluations
  int multistarts = 20;        // local searches, including the annealing winner
  int local_evals = 4000;      // Nelder-Mead evaluations per restart
  int threads = 0;             // 0: hardware concurrency
  /// Extra starting points in the model's own parameter order.
  std::vector<std::vector<double>> extra_starts;
};

struct FitResult {
  std::string model;
  std::vector<std::string> param_names;
  std::vector<double> params;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  int n_obs = 0;
  bool converged = false;
  int n_restarts_used = 0;
  double gradient_norm_at_opt = 0.0;
  long evaluations = 0;
  /// loglik at every local search's starting point
  std::vector<double> start_logliks;
  std::optional<std::string> error;  // set when the fit could not run

  [[nodiscard]] int n_free() const { return static_cast<int>(params.size()); }
  [[nodiscard]] std::optional<double> param(std::string_view name) const;
};

/// Maximum likelihood: annealing over the documented box, then multistart
/// Nelder-Mead and a BFGS polish (analytic score for normal-kernel models,
/// central differences otherwise; no polish for Laplace kernels). Scales are
/// searched on the log scale. Throws std::invalid_argument for samples that
/// are too small or have zero variance.
FitResult fit(std::span<const double> data, const ModelSpec& model, const FitOptions& options = {});

/// Gradient of loglik at `params` in the model's parameter order.
std::vector<double> model_gradient(std::span<const double> data, const ModelSpec& model,
                                   std::span<const double> params);

/// Standard errors from the observed information (numerical Hessian).
/// Returns nullopt when the information matrix is not positive definite.
std::optional<std::vector<double>> standard_errors(std::span<const double> data,
                                                   const ModelSpec& model,
                                                   std::span<const double> params);

struct LrTestResult {
  double statistic = 0.0;  // clamped at zero
  double raw_statistic = 0.0;
  int df = 0;
  double critical_value_95 = 0.0;
  bool reject_null = false;
  FitResult nested_fit;
  FitResult full_fit;
};

/// Chi-square 0.95 quantile.
double chi_square_critical_95(int df);

/// Fits both models; the full fit is also started from the nested optimum.
/// Throws std::invalid_argument when `nested` is not a restriction of `full`.
LrTestResult lr_test(std::span<const double> data, const ModelSpec& nested, const ModelSpec& full,
                     const FitOptions& options = {});

/// Fits every tabulated zoo model and sorts by AIC (failed fits last).
std::vector<FitResult> reproduce_table(std::span<const double> data, const FitOptions& options = {});

}  // namespace gabsn
