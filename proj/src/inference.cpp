#include "gabsn/inference.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include "gabsn/core.hpp"
#include "gabsn/optimize.hpp"
#include "gabsn/rng.hpp"
#include "gabsn/special.hpp"

namespace gabsn {
namespace {

// Fits run on the standardized sample z = (y - mean) / sd so that the search
// is affine-equivariant; results are mapped back at the end.
struct Standardized {
  std::vector<double> z;
  double mean = 0.0;
  double sd = 1.0;
  double lo = 0.0;  // min z
  double hi = 0.0;  // max z
};

Standardized standardize(std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw std::invalid_argument("fit: data have zero variance");
  }
  Standardized s;
  s.mean = mean;
  s.sd = sd;
  s.z.reserve(y.size());
  for (double v : y) s.z.push_back((v - mean) / sd);
  const auto [mn, mx] = std::minmax_element(s.z.begin(), s.z.end());
  s.lo = *mn;
  s.hi = *mx;
  return s;
}

enum class Role { Location, Scale, Shape };

std::vector<Role> roles(const ModelSpec& m) {
  std::vector<Role> r;
  for (std::size_t i = 0; i < m.n_params(); ++i) {
    if (m.is_scale[i]) r.push_back(Role::Scale);
    else if (m.param_names[i] == "mu") r.push_back(Role::Location);
    else r.push_back(Role::Shape);
  }
  return r;
}

// Standard deviation of the unit-scale kernel.
double kernel_sd(Kernel k) {
  switch (k) {
    case Kernel::Normal: return 1.0;
    case Kernel::Logistic: return std::numbers::pi / std::sqrt(3.0);
    case Kernel::Laplace: return std::sqrt(2.0);
  }
  return 1.0;
}

// internal coordinates (log scales) -> parameters
std::vector<double> to_params(std::span<const double> x, const std::vector<Role>& r) {
  std::vector<double> th(x.begin(), x.end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == Role::Scale) th[i] = std::exp(x[i]);
  }
  return th;
}

std::vector<double> to_internal(std::span<const double> th, const std::vector<Role>& r) {
  std::vector<double> x(th.begin(), th.end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == Role::Scale) x[i] = std::log(th[i]);
  }
  return x;
}

// parameters for the original data -> parameters for the standardized data
std::vector<double> standardize_params(std::span<const double> th, const std::vector<Role>& r,
                                       const Standardized& s) {
  std::vector<double> out(th.begin(), th.end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == Role::Location) out[i] = (th[i] - s.mean) / s.sd;
    if (r[i] == Role::Scale) out[i] = th[i] / s.sd;
  }
  return out;
}

std::vector<double> unstandardize_params(std::span<const double> th, const std::vector<Role>& r,
                                         const Standardized& s) {
  std::vector<double> out(th.begin(), th.end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == Role::Location) out[i] = s.mean + s.sd * th[i];
    if (r[i] == Role::Scale) out[i] = s.sd * th[i];
  }
  return out;
}

double norm2(std::span<const double> g) {
  double s = 0.0;
  for (double v : g) s += v * v;
  return std::sqrt(s);
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct LocalResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  double start_f = std::numeric_limits<double>::infinity();
  bool converged = false;
  long evals = 0;
};

unsigned worker_count(int requested, std::size_t tasks) {
  unsigned t = requested > 0 ? static_cast<unsigned>(requested) : std::thread::hardware_concurrency();
  t = std::max(1u, t);
  return static_cast<unsigned>(std::min<std::size_t>(t, tasks));
}

}  // namespace

LogLik evaluate_loglik(std::span<const double> data, const LocScaleParams& p) {
  require_positive_scale(p.sigma, "loglik");
  if (data.empty()) throw std::invalid_argument("loglik: empty sample");
  const ShapeParams& s = p.shape;
  const double n = static_cast<double>(data.size());
  double sum = 0.0;
  for (double y : data) {
    const double w = (y - p.mu) / p.sigma;
    const double d = skew_factor(w, s.alpha, s.beta);
    sum += std::log(d) - 0.5 * w * w + log_norm_cdf(s.lambda * w);
  }
  const double value =
      sum - n * std::log(normalizing_constant(s)) - n * std::log(p.sigma) - n * kLogSqrt2Pi;
  if (!std::isfinite(value)) return {kLogLikSentinel, true};
  return {value, false};
}

double loglik(std::span<const double> data, const LocScaleParams& p) {
  return evaluate_loglik(data, p).value;
}

LogLik evaluate_loglik(std::span<const double> data, const ModelSpec& model,
                       std::span<const double> params) {
  if (data.empty()) throw std::invalid_argument("loglik: empty sample");
  if (params.size() != model.n_params()) {
    throw std::invalid_argument(model.name + ": wrong number of parameters");
  }
  double sum = 0.0;
  for (double y : data) sum += model.log_density(y, params);
  if (!std::isfinite(sum)) return {kLogLikSentinel, true};
  return {sum, false};
}

std::array<double, 5> score(std::span<const double> data, const LocScaleParams& p) {
  require_positive_scale(p.sigma, "score");
  if (data.empty()) throw std::invalid_argument("score: empty sample");
  const double a = p.shape.alpha;
  const double b = p.shape.beta;
  const double l = p.shape.lambda;
  const double n = static_cast<double>(data.size());
  const double l2 = 1.0 + l * l;
  const double delta = p.shape.delta();
  const double c = normalizing_constant(p.shape);
  const double c_a = a + 3.0 * b - kB * delta;
  const double c_b = 3.0 * a + 15.0 * b - kB * delta * (3.0 + 2.0 * l * l) / l2;
  const double c_l = -kB * (a * l2 + 3.0 * b) / std::pow(l2, 2.5);

  double s_a = 0.0, s_b = 0.0, s_l = 0.0, sum_g = 0.0, sum_gw = 0.0;
  for (double y : data) {
    const double w = (y - p.mu) / p.sigma;
    const double w3 = w * w * w;
    const double d = 1.0 - a * w - b * w3;
    const double nn = d * d + 1.0;
    const double r = inv_mills(l * w);
    s_a += -2.0 * d * w / nn;
    s_b += -2.0 * d * w3 / nn;
    s_l += w * r;
    // derivative of the log density in w
    const double g = -2.0 * d * (a + 3.0 * b * w * w) / nn - w + l * r;
    sum_g += g;
    sum_gw += g * w;
  }
  return {s_a - n * c_a / c, s_b - n * c_b / c, s_l - n * c_l / c, -sum_g / p.sigma,
          -n / p.sigma - sum_gw / p.sigma};
}

std::optional<double> FitResult::param(std::string_view name) const {
  for (std::size_t i = 0; i < param_names.size(); ++i) {
    if (param_names[i] == name) return params[i];
  }
  return std::nullopt;
}

std::vector<double> model_gradient(std::span<const double> data, const ModelSpec& model,
                                   std::span<const double> params) {
  std::vector<double> g(model.n_params());
  if (model.kernel == Kernel::Normal) {
    const auto full = score(data, model.to_gabsn(params));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = full[static_cast<int>(model.gabsn_slots[i])];
    return g;
  }
  std::vector<double> th(params.begin(), params.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(th[i]));
    const double orig = th[i];
    th[i] = orig + h;
    const double up = evaluate_loglik(data, model, th).value;
    th[i] = orig - h;
    const double dn = evaluate_loglik(data, model, th).value;
    th[i] = orig;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

std::optional<std::vector<double>> standard_errors(std::span<const double> data,
                                                   const ModelSpec& model,
                                                   std::span<const double> params) {
  const auto k = static_cast<Eigen::Index>(model.n_params());
  Eigen::MatrixXd info(k, k);
  std::vector<double> th(params.begin(), params.end());
  for (Eigen::Index j = 0; j < k; ++j) {
    const double h = 1e-5 * std::max(1.0, std::abs(th[j]));
    const double orig = th[j];
    th[j] = orig + h;
    const auto up = model_gradient(data, model, th);
    th[j] = orig - h;
    const auto dn = model_gradient(data, model, th);
    th[j] = orig;
    for (Eigen::Index i = 0; i < k; ++i) info(i, j) = -(up[i] - dn[i]) / (2.0 * h);
  }
  info = 0.5 * (info + info.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(k, k));
  std::vector<double> se(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) se[i] = std::sqrt(cov(i, i));
  return se;
}

FitResult fit(std::span<const double> data, const ModelSpec& model, const FitOptions& options) {
  const std::size_t k = model.n_params();
  if (data.size() < 2 * k) {
    throw std::invalid_argument("fit: " + model.name + " needs at least " + std::to_string(2 * k) +
                                " observations");
  }
  for (double v : data) {
    if (!std::isfinite(v)) throw std::invalid_argument("fit: data contain non-finite values");
  }
  const Standardized st = standardize(data);
  const std::vector<Role> r = roles(model);
  const std::span<const double> z(st.z);

  // Box in internal coordinates; equals mu in [min - range, max + range],
  // scale in [range / 100, 10 range], shapes in [-50, 50] on the original data.
  const double range = st.hi - st.lo;
  opt::Box box;
  for (Role role : r) {
    switch (role) {
      case Role::Location:
        box.lower.push_back(st.lo - range);
        box.upper.push_back(st.hi + range);
        break;
      case Role::Scale:
        box.lower.push_back(std::log(range / 100.0));
        box.upper.push_back(std::log(10.0 * range));
        break;
      case Role::Shape:
        box.lower.push_back(-50.0);
        box.upper.push_back(50.0);
        break;
    }
  }

  auto objective = [&](std::span<const double> x) {
    const auto th = to_params(x, r);
    const LogLik ll = evaluate_loglik(z, model, th);
    return ll.underflow ? -kLogLikSentinel : -ll.value;
  };
  auto gradient = [&](std::span<const double> x, std::span<double> g) {
    const auto th = to_params(x, r);
    const auto gt = model_gradient(z, model, th);
    for (std::size_t i = 0; i < k; ++i) g[i] = -(r[i] == Role::Scale ? gt[i] * th[i] : gt[i]);
  };

  std::vector<double> base(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (r[i] == Role::Scale) base[i] = std::log(1.0 / kernel_sd(model.kernel));
  }
  box.clamp(base);

  const Rng root(options.seed);
  long total_evals = 0;

  // global phase
  std::vector<double> global_best = base;
  if (options.global_budget > 0) {
    Rng rng = root.split(0);
    opt::AnnealOptions ao;
    ao.budget = options.global_budget;
    const auto m = opt::anneal(objective, base, box, rng, ao);
    global_best = m.x;
    total_evals += m.evals;
  }

  // local starting points
  std::vector<std::vector<double>> starts{global_best, base};
  for (const auto& e : options.extra_starts) {
    if (e.size() != k) throw std::invalid_argument("fit: extra start has wrong size");
    auto x = to_internal(standardize_params(e, r, st), r);
    box.clamp(x);
    starts.push_back(std::move(x));
  }
  for (int i = 0; static_cast<int>(starts.size()) < std::max(options.multistarts, 2) +
                                                     static_cast<int>(options.extra_starts.size());
       ++i) {
    Rng rng = root.split(100 + static_cast<std::uint64_t>(i));
    const double shape_width = i % 2 == 0 ? 2.0 : 8.0;
    std::vector<double> x(k);
    for (std::size_t j = 0; j < k; ++j) {
      switch (r[j]) {
        case Role::Location: x[j] = rng.uniform(-1.0, 1.0); break;
        case Role::Scale: x[j] = base[j] + rng.uniform(-0.7, 0.5); break;
        case Role::Shape: x[j] = rng.uniform(-shape_width, shape_width); break;
      }
    }
    box.clamp(x);
    starts.push_back(std::move(x));
  }

  std::vector<double> step(k);
  for (std::size_t j = 0; j < k; ++j) step[j] = r[j] == Role::Shape ? 0.5 : 0.25;

  auto run_local = [&](const std::vector<double>& x0) {
    LocalResult res;
    long evals = 0;
    auto counted = [&](std::span<const double> x) {
      ++evals;
      return objective(x);
    };
    res.start_f = objective(x0);
    opt::NelderMeadOptions no;
    no.max_evals = options.local_evals;
    no.box = box;
    const auto nm = opt::nelder_mead_restarts(counted, x0, step, no, 3);
    res.x = nm.x;
    res.f = nm.f;
    res.converged = nm.converged;
    if (model.smooth) {
      opt::BfgsOptions bo;
      bo.box = box;
      bo.gtol = 1e-9;
      const auto polished = opt::bfgs(counted, gradient, nm.x, bo);
      if (polished.f <= res.f) {
        res.x = polished.x;
        res.f = polished.f;
      }
    }
    res.evals = evals;
    return res;
  };

  std::vector<LocalResult> results(starts.size());
  const unsigned workers = worker_count(options.threads, starts.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) results[i] = run_local(starts[i]);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < starts.size(); i += workers) results[i] = run_local(starts[i]);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].f < results[best].f ||
        (results[i].f == results[best].f && lex_less(results[i].x, results[best].x))) {
      best = i;
    }
  }

  FitResult out;
  out.model = model.label;
  out.param_names = model.param_names;
  out.n_obs = static_cast<int>(data.size());
  out.n_restarts_used = static_cast<int>(starts.size());
  for (const auto& res : results) {
    total_evals += res.evals + 1;
    // objective lives on the standardized scale
    out.start_logliks.push_back(-res.start_f - static_cast<double>(data.size()) * std::log(st.sd));
  }
  out.evaluations = total_evals;
  out.params = unstandardize_params(to_params(results[best].x, r), r, st);
  out.loglik = evaluate_loglik(data, model, out.params).value;
  const double kk = static_cast<double>(k);
  out.aic = 2.0 * kk - 2.0 * out.loglik;
  out.bic = kk * std::log(static_cast<double>(data.size())) - 2.0 * out.loglik;
  out.gradient_norm_at_opt = norm2(model_gradient(data, model, out.params));
  out.converged = model.smooth ? out.gradient_norm_at_opt < 1e-4 : results[best].converged;
  return out;
}

double chi_square_critical_95(int df) {
  if (df < 1) throw std::invalid_argument("chi_square_critical_95: df must be >= 1");
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), 0.95);
}

LrTestResult lr_test(std::span<const double> data, const ModelSpec& nested, const ModelSpec& full,
                     const FitOptions& options) {
  if (!is_restriction(nested, full)) {
    throw std::invalid_argument("lr_test: " + nested.name + " is not nested in " + full.name);
  }
  LrTestResult out;
  out.df = static_cast<int>(full.n_params()) - static_cast<int>(nested.n_params());
  out.nested_fit = fit(data, nested, options);
  if (out.df == 0) {
    // same parameter space: the statistic is zero by definition
    out.full_fit = out.nested_fit;
    return out;
  }
  FitOptions full_options = options;
  std::vector<double> embedded;
  for (const auto& name : full.param_names) {
    embedded.push_back(out.nested_fit.param(name).value_or(0.0));
  }
  full_options.extra_starts.push_back(std::move(embedded));
  out.full_fit = fit(data, full, full_options);
  out.raw_statistic = 2.0 * (out.full_fit.loglik - out.nested_fit.loglik);
  out.statistic = std::max(0.0, out.raw_statistic);
  out.critical_value_95 = chi_square_critical_95(out.df);
  out.reject_null = out.statistic > out.critical_value_95;
  return out;
}

std::vector<FitResult> reproduce_table(std::span<const double> data, const FitOptions& options) {
  std::vector<FitResult> rows;
  for (const auto& m : model_zoo()) {
    if (!m.in_tables) continue;
    try {
      rows.push_back(fit(data, m, options));
    } catch (const std::exception& e) {
      FitResult failed;
      failed.model = m.label;
      failed.param_names = m.param_names;
      failed.n_obs = static_cast<int>(data.size());
      failed.error = e.what();
      rows.push_back(std::move(failed));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const FitResult& a, const FitResult& b) {
    if (a.error.has_value() != b.error.has_value()) return !a.error.has_value();
    return a.aic < b.aic;
  });
  return rows;
}

}  // namespace gabsn
