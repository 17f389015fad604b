// gabsn: evaluate, sample, fit and compare generalized alpha-beta-skew-normal
// models from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gabsn/analytic.hpp"
#include "gabsn/core.hpp"
#include "gabsn/dataset.hpp"
#include "gabsn/inference.hpp"
#include "gabsn/plot.hpp"
#include "gabsn/report.hpp"
#include "gabsn/rng.hpp"
#include "gabsn/sampling.hpp"
#include "gabsn/zoo.hpp"

using nlohmann::json;
using namespace gabsn;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  bool json_out = false;
  std::uint64_t seed = 1;
};

struct ParamArgs {
  double alpha = 0.0, beta = 0.0, lambda = 0.0, mu = 0.0, sigma = 1.0;

  void add(CLI::App* app, bool loc_scale = true) {
    app->add_option("--alpha", alpha, "alpha")->capture_default_str();
    app->add_option("--beta", beta, "beta")->capture_default_str();
    app->add_option("--lambda", lambda, "lambda")->capture_default_str();
    if (loc_scale) {
      app->add_option("--mu", mu, "location")->capture_default_str();
      app->add_option("--sigma", sigma, "scale (> 0)")->capture_default_str();
    }
  }
  [[nodiscard]] LocScaleParams get() const {
    if (!(sigma > 0.0)) throw UsageError("--sigma must be > 0");
    return {{alpha, beta, lambda}, mu, sigma};
  }
};

struct FitArgs {
  std::string data;
  std::string column;
  long budget = 20000;
  int starts = 20;
  int threads = 0;

  void add(CLI::App* app) {
    app->add_option("--data", data, "builtin name (lakes69, ais_wcc202) or file path")->required();
    app->add_option("--column", column, "CSV column name");
    app->add_option("--budget", budget, "global-phase evaluations")->capture_default_str();
    app->add_option("--starts", starts, "local searches")->capture_default_str();
    app->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
  }
  [[nodiscard]] FitOptions options(std::uint64_t seed) const {
    FitOptions o;
    o.seed = seed;
    o.global_budget = budget;
    o.multistarts = starts;
    o.threads = threads;
    return o;
  }
  [[nodiscard]] Dataset load() const { return load_dataset(data, column); }
};

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string fmt_params(const FitResult& r) {
  std::string s;
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    s += fmt::format("{}{}={:.4f}", i ? " " : "", r.param_names[i], r.params[i]);
  }
  return s;
}

void print_fit_row(const FitResult& r) {
  if (r.error) {
    fmt::print("{:<7} failed: {}\n", r.model, *r.error);
    return;
  }
  fmt::print("{:<7} logL={:.3f} AIC={:.3f} BIC={:.3f} {}{}\n", r.model, r.loglik, r.aic, r.bic,
             fmt_params(r), r.converged ? "" : " (not converged)");
}

// "name" or "name:p1,p2,..."
std::pair<const ModelSpec*, std::optional<std::vector<double>>> parse_model_ref(const std::string& ref) {
  const auto colon = ref.find(':');
  const ModelSpec& m = find_model(ref.substr(0, colon));
  if (colon == std::string::npos) return {&m, std::nullopt};
  std::vector<double> p;
  std::stringstream ss(ref.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      p.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad parameter '" + item + "' in " + ref);
    }
  }
  if (p.size() != m.n_params()) {
    throw UsageError(fmt::format("{} takes {} parameters ({})", m.name, m.n_params(),
                                 fmt::join(m.param_names, ",")));
  }
  return {&m, p};
}

int run_eval(const std::string& what, const ParamArgs& pa, const std::vector<double>& zs,
             const Common& c) {
  const LocScaleParams p = pa.get();
  if (what == "moments") {
    const MomentSet m = moment_set(p.shape);
    if (c.json_out) {
      print_json(json{{"params", p.shape}, {"moments", m}});
    } else {
      fmt::print("m1 {:.6f}\nm2 {:.6f}\nm3 {:.6f}\nm4 {:.6f}\nvariance {:.6f}\nb1 {:.6f}\nb2 {:.6f}\n",
                 m.m1, m.m2, m.m3, m.m4, m.variance, m.skewness_b1, m.kurtosis_b2);
    }
    return 0;
  }
  if (zs.empty()) throw UsageError("eval " + what + " needs at least one --z");
  json rows = json::array();
  for (double z : zs) {
    const double v = what == "pdf" ? pdf_loc_scale(z, p) : cdf((z - p.mu) / p.sigma, p.shape);
    if (c.json_out) rows.push_back(json{{"z", z}, {"value", v}});
    else fmt::print("{} {:.6f}\n", z, v);
  }
  if (c.json_out) print_json(json{{"kind", what}, {"params", p}, {"points", rows}});
  return 0;
}

int run_sample(const ParamArgs& pa, std::size_t n, const Common& c) {
  Rng rng(c.seed);
  const SampleBatch b = sample_loc_scale(n, pa.get(), rng);
  if (c.json_out) {
    print_json(json{{"values", b.values},
                    {"acceptance_rate", b.acceptance_rate},
                    {"n_proposed", b.n_proposed},
                    {"seed", c.seed}});
  } else {
    for (double v : b.values) fmt::print("{:.17g}\n", v);
  }
  return 0;
}

int run_fit(const FitArgs& fa, const std::string& model, const Common& c) {
  const ModelSpec& m = find_model(model);
  const Dataset ds = fa.load();
  const FitResult r = fit(ds.values, m, fa.options(c.seed));
  if (c.json_out) {
    print_json(json{{"dataset", ds.name}, {"fit", r}});
  } else {
    fmt::print("{} (n={})\n", ds.name, ds.values.size());
    print_fit_row(r);
    fmt::print("gradient norm {:.2e}, {} local searches, {} evaluations\n", r.gradient_norm_at_opt,
               r.n_restarts_used, r.evaluations);
  }
  return r.error ? 1 : 0;
}

int run_compare(const FitArgs& fa, const Common& c) {
  const Dataset ds = fa.load();
  const auto rows = reproduce_table(ds.values, fa.options(c.seed));
  if (c.json_out) {
    print_json(json{{"dataset", ds.name}, {"ranking", rows}});
  } else {
    fmt::print("{} (n={}), ranked by AIC\n", ds.name, ds.values.size());
    for (const auto& r : rows) print_fit_row(r);
  }
  return 0;
}

int run_lrtest(const FitArgs& fa, const std::string& null_model, const std::string& alt_model,
               const Common& c) {
  const ModelSpec& n = find_model(null_model);
  const ModelSpec& a = find_model(alt_model);
  if (!is_restriction(n, a)) throw UsageError(n.name + " is not nested in " + a.name);
  const Dataset ds = fa.load();
  const LrTestResult r = lr_test(ds.values, n, a, fa.options(c.seed));
  if (c.json_out) {
    print_json(json{{"dataset", ds.name}, {"null", n.label}, {"alt", a.label}, {"test", r}});
  } else {
    fmt::print("H0: {} vs H1: {} on {}\n", n.label, a.label, ds.name);
    fmt::print("LR {:.3f}  df {}  critical(0.95) {:.3f}  {}\n", r.statistic, r.df,
               r.critical_value_95, r.reject_null ? "reject H0" : "do not reject H0");
  }
  return 0;
}

int run_plotdata(const FitArgs& fa, const std::vector<std::string>& models, const Common& c) {
  const Dataset ds = fa.load();
  const Histogram h = histogram(ds.values);
  std::vector<Curve> curves;
  for (const auto& ref : models) {
    auto [m, given] = parse_model_ref(ref);
    const std::vector<double> params = given ? *given : fit(ds.values, *m, fa.options(c.seed)).params;
    curves.push_back(density_curve(ds.values, *m, params, m->label));
  }
  if (c.json_out) {
    json jc = json::array();
    for (const auto& cv : curves) jc.push_back(json{{"series", cv.label}, {"x", cv.x}, {"y", cv.y}});
    print_json(json{{"dataset", ds.name},
                    {"histogram",
                     {{"rule", h.rule}, {"edges", h.edges}, {"counts", h.counts}, {"density", h.density}}},
                    {"curves", jc}});
  } else {
    std::cout << plot_csv(h, curves);
  }
  return 0;
}

int run_bounds(const std::string& target, double half_width, int starts, int threads, const Common& c) {
  const auto t = parse_bound_target(target);
  if (!t) throw UsageError("unknown target '" + target + "' (mean, variance, skew_b1, kurt_b2)");
  if (!(half_width > 0.0)) throw UsageError("--box must be > 0");
  BoundSearchOptions o;
  o.box.lower = {-half_width, -half_width, -half_width};
  o.box.upper = {half_width, half_width, half_width};
  o.starts = starts;
  o.threads = threads;
  o.seed = c.seed;
  const BoundResult r = bound_search(*t, o);
  if (c.json_out) {
    print_json(json{{"target", bound_target_name(*t)}, {"box", half_width}, {"result", r}});
  } else {
    fmt::print("{} over [-{},{}]^3\nmin {:.6f} at alpha={:.4f} beta={:.4f} lambda={:.4f}\n"
               "max {:.6f} at alpha={:.4f} beta={:.4f} lambda={:.4f}\n",
               bound_target_name(*t), half_width, half_width, r.min, r.argmin.alpha, r.argmin.beta,
               r.argmin.lambda, r.max, r.argmax.alpha, r.argmax.beta, r.argmax.lambda);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized alpha-beta-skew-normal toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json_out, "machine-readable JSON output");
  app.add_option("--seed", common.seed, "random seed")->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate pdf, cdf or moments");
  eval->require_subcommand(1);
  ParamArgs eval_params;
  std::vector<double> zs;
  std::string eval_kind;
  for (const char* kind : {"pdf", "cdf", "moments"}) {
    auto* sub = eval->add_subcommand(kind, std::string(kind));
    eval_params.add(sub, std::string(kind) != "moments");
    if (std::string(kind) != "moments") sub->add_option("--z", zs, "evaluation points")->delimiter(',');
    sub->callback([&eval_kind, kind] { eval_kind = kind; });
  }

  auto* sample = app.add_subcommand("sample", "draw random variates");
  ParamArgs sample_params;
  sample_params.add(sample);
  std::size_t n = 1000;
  sample->add_option("-n,--n", n, "sample size")->check(CLI::PositiveNumber)->capture_default_str();

  auto* fitc = app.add_subcommand("fit", "maximum-likelihood fit of one model");
  FitArgs fit_args;
  fit_args.add(fitc);
  std::string model = "gabsn";
  fitc->add_option("--model", model, "model name")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "fit all tabulated models and rank by AIC");
  FitArgs compare_args;
  compare_args.add(compare);

  auto* lrtest = app.add_subcommand("lrtest", "likelihood-ratio test of nested models");
  FitArgs lr_args;
  lr_args.add(lrtest);
  std::string null_model, alt_model;
  lrtest->add_option("--null", null_model, "nested model")->required();
  lrtest->add_option("--alt", alt_model, "full model")->required();

  auto* plot = app.add_subcommand("plotdata", "histogram and fitted density curves");
  FitArgs plot_args;
  plot_args.add(plot);
  std::vector<std::string> plot_models;
  plot->add_option("--model", plot_models, "model name, or name:p1,p2,... to skip fitting");

  auto* bounds = app.add_subcommand("bounds", "numerical extrema of a moment functional");
  std::string target = "mean";
  double half_width = 20.0;
  int bound_starts = 1000, bound_threads = 0;
  bounds->add_option("--target", target, "mean, variance, skew_b1 (b1) or kurt_b2 (b2)")->capture_default_str();
  bounds->add_option("--box", half_width, "half-width of the parameter cube")->capture_default_str();
  bounds->add_option("--starts", bound_starts, "multistart count")->capture_default_str();
  bounds->add_option("--threads", bound_threads, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(eval_kind, eval_params, zs, common);
    if (sample->parsed()) return run_sample(sample_params, n, common);
    if (fitc->parsed()) return run_fit(fit_args, model, common);
    if (compare->parsed()) return run_compare(compare_args, common);
    if (lrtest->parsed()) return run_lrtest(lr_args, null_model, alt_model, common);
    if (plot->parsed()) return run_plotdata(plot_args, plot_models, common);
    if (bounds->parsed()) return run_bounds(target, half_width, bound_starts, bound_threads, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnknownModel& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
