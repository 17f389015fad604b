#pragma once

// Derivative-free and gradient minimizers shared by the fitter and the
// moment-bound search. All routines minimize.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gabsn/rng.hpp"

namespace gabsn::opt {

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  [[nodiscard]] bool empty() const { return lower.empty(); }
  void clamp(std::span<double> x) const;
};

struct NelderMeadOptions {
  int max_evals = 20000;
  double ftol = 1e-12;  // simplex f-spread
  double xtol = 1e-10;  // simplex diameter
  std::optional<Box> box;
};

struct Minimum {
  std::vector<double> x;
  double f = 0.0;
  long evals = 0;
  bool converged = false;
};

/// Nelder-Mead with adaptive coefficients (Gao & Han) and projection onto
/// the box when one is given. `step` sets the initial simplex edge per axis.
Minimum nelder_mead(const Objective& f, std::span<const double> x0, std::span<const double> step,
                    const NelderMeadOptions& options = {});

/// Repeats Nelder-Mead from its own optimum until the value stops improving.
Minimum nelder_mead_restarts(const Objective& f, std::span<const double> x0,
                             std::span<const double> step, const NelderMeadOptions& options = {},
                             int max_restarts = 6);

struct AnnealOptions {
  long budget = 20000;
  double initial_temperature = 0.0;  // 0: pick from the spread of initial samples
  double cooling = 0.0;              // 0: geometric schedule ending near 1e-6 of start
};

/// Simulated annealing inside a box with Gaussian proposals whose scale
/// shrinks with temperature. Returns the best point visited.
Minimum anneal(const Objective& f, std::span<const double> x0, const Box& box, Rng& rng,
               const AnnealOptions& options = {});

struct BfgsOptions {
  int max_iter = 500;
  double gtol = 1e-8;
  std::optional<Box> box;
};

struct GradMinimum {
  std::vector<double> x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// BFGS with a backtracking Armijo line search.
GradMinimum bfgs(const Objective& f, const Gradient& grad, std::span<const double> x0,
                 const BfgsOptions& options = {});

}  // namespace gabsn::opt
