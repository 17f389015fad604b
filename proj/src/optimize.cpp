#include "gabsn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gabsn::opt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isnan(v) ? kInf : v;
}

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

void Box::clamp(std::span<double> x) const {
  if (lower.empty()) return;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
}

Minimum nelder_mead(const Objective& f, std::span<const double> x0, std::span<const double> step,
                    const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw std::invalid_argument("nelder_mead: bad dimensions");
  const double dn = static_cast<double>(n);
  const double c_reflect = 1.0;
  const double c_expand = n > 1 ? 1.0 + 2.0 / dn : 2.0;
  const double c_contract = n > 1 ? 0.75 - 0.5 / dn : 0.5;
  const double c_shrink = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  auto project = [&](std::vector<double>& x) {
    if (options.box) options.box->clamp(x);
  };

  std::vector<std::vector<double>> v(n + 1, std::vector<double>(x0.begin(), x0.end()));
  project(v[0]);
  for (std::size_t i = 0; i < n; ++i) {
    v[i + 1][i] += step[i];
    project(v[i + 1]);
    if (v[i + 1][i] == v[0][i]) {
      v[i + 1][i] -= step[i];
      project(v[i + 1]);
    }
  }
  std::vector<double> fv(n + 1);
  long evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    fv[i] = safe_eval(f, v[i]);
    ++evals;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  bool converged = false;

  while (evals < options.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        diameter = std::max(diameter, std::abs(v[i][j] - v[best][j]));
      }
    }
    const double spread = std::abs(fv[worst] - fv[best]);
    if (std::isfinite(fv[best]) && spread <= options.ftol * (1.0 + std::abs(fv[best])) &&
        diameter <= options.xtol * (1.0 + norm2(v[best]))) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += v[i][j] / dn;
    }

    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + c_reflect * (centroid[j] - v[worst][j]);
    project(xr);
    const double fr = safe_eval(f, xr);
    ++evals;

    if (fr < fv[best]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + c_expand * (xr[j] - centroid[j]);
      project(xe);
      const double fe = safe_eval(f, xe);
      ++evals;
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? centroid[j] + c_contract * (xr[j] - centroid[j])
                      : centroid[j] + c_contract * (v[worst][j] - centroid[j]);
    }
    project(xc);
    const double fc = safe_eval(f, xc);
    ++evals;
    if (fc < std::min(fr, fv[worst])) {
      v[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) v[i][j] = v[best][j] + c_shrink * (v[i][j] - v[best][j]);
      project(v[i]);
      fv[i] = safe_eval(f, v[i]);
      ++evals;
    }
  }

  const auto it = std::min_element(fv.begin(), fv.end());
  const auto idx = static_cast<std::size_t>(it - fv.begin());
  return {v[idx], fv[idx], evals, converged};
}

Minimum nelder_mead_restarts(const Objective& f, std::span<const double> x0,
                             std::span<const double> step, const NelderMeadOptions& options,
                             int max_restarts) {
  Minimum best = nelder_mead(f, x0, step, options);
  std::vector<double> s(step.begin(), step.end());
  for (int r = 0; r < max_restarts; ++r) {
    for (auto& si : s) si *= 0.5;
    Minimum next = nelder_mead(f, best.x, s, options);
    next.evals += best.evals;
    const bool improved = next.f < best.f - 1e-12 * (1.0 + std::abs(best.f));
    if (next.f <= best.f) best = std::move(next);
    else best.evals = next.evals;
    if (!improved) break;
  }
  return best;
}

Minimum anneal(const Objective& f, std::span<const double> x0, const Box& box, Rng& rng,
               const AnnealOptions& options) {
  const std::size_t n = x0.size();
  if (box.lower.size() != n || box.upper.size() != n) {
    throw std::invalid_argument("anneal: box dimension mismatch");
  }
  std::vector<double> width(n);
  for (std::size_t i = 0; i < n; ++i) width[i] = box.upper[i] - box.lower[i];

  std::vector<double> x(x0.begin(), x0.end());
  box.clamp(x);
  double fx = safe_eval(f, x);
  long evals = 1;
  Minimum best{x, fx, evals, false};

  double t0 = options.initial_temperature;
  if (t0 <= 0.0) {
    // Temperature from the spread of a few uniform probes.
    std::vector<double> probe(n);
    std::vector<double> vals;
    for (int k = 0; k < 32 && evals < options.budget; ++k) {
      for (std::size_t i = 0; i < n; ++i) probe[i] = rng.uniform(box.lower[i], box.upper[i]);
      const double v = safe_eval(f, probe);
      ++evals;
      if (std::isfinite(v)) vals.push_back(v);
      if (v < best.f) {
        best.x = probe;
        best.f = v;
      }
    }
    if (vals.size() >= 2) {
      const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      t0 = std::sqrt(var / (vals.size() - 1));
    }
    if (!(t0 > 0.0) || !std::isfinite(t0)) t0 = 1.0;
  }
  const long steps = std::max<long>(1, options.budget - evals);
  const double cooling =
      options.cooling > 0.0 ? options.cooling : std::pow(1e-6, 1.0 / static_cast<double>(steps));

  double temp = t0;
  std::vector<double> y(n);
  while (evals < options.budget) {
    const double scale = 0.25 * std::sqrt(temp / t0);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = x[i] + std::max(scale, 1e-4) * width[i] * rng.normal();
      // reflect into the box
      if (y[i] < box.lower[i]) y[i] = std::min(box.upper[i], 2.0 * box.lower[i] - y[i]);
      if (y[i] > box.upper[i]) y[i] = std::max(box.lower[i], 2.0 * box.upper[i] - y[i]);
    }
    const double fy = safe_eval(f, y);
    ++evals;
    const double u = rng.uniform();
    if (fy <= fx || (std::isfinite(fy) && u < std::exp(-(fy - fx) / temp))) {
      x = y;
      fx = fy;
      if (fx < best.f) {
        best.x = x;
        best.f = fx;
      }
    }
    temp *= cooling;
  }
  best.evals = evals;
  return best;
}

GradMinimum bfgs(const Objective& f, const Gradient& grad, std::span<const double> x0,
                 const BfgsOptions& options) {
  const std::size_t n = x0.size();
  std::vector<double> x(x0.begin(), x0.end());
  if (options.box) options.box->clamp(x);
  std::vector<double> g(n), g_new(n), x_new(n), d(n), s(n), yv(n), hy(n);
  std::vector<double> h(n * n, 0.0);
  bool fresh = true;
  auto reset = [&] {
    fresh = true;
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 1.0;
  };
  reset();

  double fx = safe_eval(f, x);
  grad(x, g);
  GradMinimum out;
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    if (norm2(g) < options.gtol) {
      out.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) d[i] -= h[i * n + j] * g[j];
    }
    double slope = std::inner_product(d.begin(), d.end(), g.begin(), 0.0);
    if (!(slope < 0.0)) {
      reset();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    }

    double t = 1.0;
    double f_new = kInf;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + t * d[i];
      if (options.box) options.box->clamp(x_new);
      f_new = safe_eval(f, x_new);
      if (f_new <= fx + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (fresh) break;  // steepest descent failed too
      reset();
      continue;
    }
    fresh = false;
    grad(x_new, g_new);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - x[i];
      yv[i] = g_new[i] - g[i];
    }
    const double sy = std::inner_product(s.begin(), s.end(), yv.begin(), 0.0);
    if (sy > 1e-14 * norm2(s) * norm2(yv)) {
      for (std::size_t i = 0; i < n; ++i) {
        hy[i] = 0.0;
        for (std::size_t j = 0; j < n; ++j) hy[i] += h[i * n + j] * yv[j];
      }
      const double yhy = std::inner_product(yv.begin(), yv.end(), hy.begin(), 0.0);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          h[i * n + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }
      }
    }
    const double df = fx - f_new;
    x = x_new;
    g = g_new;
    fx = f_new;
    if (df <= 1e-15 * (1.0 + std::abs(fx)) && norm2(s) <= 1e-14 * (1.0 + norm2(x))) break;
  }
  out.x = x;
  out.f = fx;
  out.grad_norm = norm2(g);
  out.iterations = iter;
  out.converged = out.converged || out.grad_norm < options.gtol;
  return out;
}

}  // namespace gabsn::opt
