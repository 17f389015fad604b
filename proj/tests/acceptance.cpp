// Acceptance run: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance [--only N ...] [--known-red N ...]
//
// Criteria listed with --known-red still print FAIL when they fail, but do not
// make the exit status nonzero. An unexpected pass of a known-red criterion is
// reported and does fail the run, so the list cannot go stale silently.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gabsn/analytic.hpp"
#include "gabsn/core.hpp"
#include "gabsn/dataset.hpp"
#include "gabsn/inference.hpp"
#include "gabsn/oracle.hpp"
#include "gabsn/rng.hpp"
#include "gabsn/sampling.hpp"
#include "gabsn/special.hpp"
#include "gabsn/zoo.hpp"
#include "test_util.hpp"

using namespace gabsn;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Status::Pass : Status::Fail, std::move(detail)};
}

double quad(const std::function<double(double)>& f, double a = -kInf, double b = kInf) {
  return oracle::integrate(f, a, b, 1e-13).value;
}

// 1. closed-form normalizer against quadrature of the unnormalized density
Outcome normalizer_oracle() {
  double worst = 0.0;
  int bad = 0;
  for (const auto& p : testutil::shape_grid(100, 5.0, 101)) {
    const double c = normalizing_constant(p);
    const double q = quad([&](double z) {
      return skew_factor(z, p.alpha, p.beta) * norm_pdf(z) * norm_cdf(p.lambda * z);
    });
    const double err = std::abs(c - q) / std::max(1.0, c);
    worst = std::max(worst, err);
    if (err > 1e-10) ++bad;
  }
  return pass_if(bad == 0, fmt::format("100 triples, worst scaled error {:.2e}, {} over 1e-10", worst, bad));
}

// 2. CDF against quadrature, monotonicity and limits
Outcome cdf_oracle() {
  const auto grid = testutil::shape_grid(50, 5.0, 202);
  std::vector<double> zs;
  for (int i = 0; i < 50; ++i) zs.push_back(-6.0 + 12.0 * i / 49.0);
  double worst = 0.0, worst_limit = 0.0;
  int bad = 0, nonmono = 0;
  for (const auto& p : grid) {
    double prev = -1.0;
    for (double z : zs) {
      const double c = cdf(z, p);
      const double q = oracle::integrate([&](double t) { return pdf(t, p); }, -kInf, z, 1e-13).value;
      worst = std::max(worst, std::abs(c - q));
      if (std::abs(c - q) > 1e-8) ++bad;
      if (c < prev - 1e-14) ++nonmono;
      prev = c;
    }
    worst_limit = std::max({worst_limit, std::abs(cdf(-40.0, p)), std::abs(cdf(40.0, p) - 1.0)});
  }
  return pass_if(bad == 0 && nonmono == 0 && worst_limit <= 1e-10,
                 fmt::format("2500 points, worst error {:.2e}, {} non-monotone steps, limit error {:.2e}",
                             worst, nonmono, worst_limit));
}

// 3. raw moments and the variance formula
Outcome moment_oracle() {
  double worst = 0.0, worst_var = 0.0;
  int bad = 0;
  for (const auto& p : testutil::shape_grid(50, 5.0, 202)) {
    for (int k = 1; k <= 4; ++k) {
      const double q = quad([&](double z) { return std::pow(z, k) * pdf(z, p); });
      const double err = std::abs(raw_moment(k, p) - q) / std::max(1.0, std::abs(q));
      worst = std::max(worst, err);
      if (err > 1e-8) ++bad;
    }
    const double m1 = raw_moment(1, p);
    const double v = raw_moment(2, p) - m1 * m1;
    worst_var = std::max(worst_var, std::abs(variance_closed_form(p) - v) / std::max(1.0, v));
  }
  return pass_if(bad == 0 && worst_var <= 1e-10,
                 fmt::format("200 moments, worst scaled error {:.2e}; variance formula {:.2e}", worst,
                             worst_var));
}

// 4. mean and variance extrema over [-20,20]^3
Outcome mean_variance_bounds() {
  BoundSearchOptions opt;
  const BoundResult mean = bound_search(BoundTarget::Mean, opt);
  const BoundResult var = bound_search(BoundTarget::Variance, opt);
  const bool mean_ok = std::abs(mean.max - 2.75863) <= 0.01 && std::abs(mean.min + 2.75863) <= 0.01;
  const bool var_ok = std::abs(var.min - 0.31173) <= 0.02 && std::abs(var.max - 8.16228) <= 0.02;

  // random points must stay inside the printed bounds
  int violations = 0;
  Rng rng(404);
  for (int i = 0; i < 20000; ++i) {
    const ShapeParams p = testutil::random_shape(rng, 20.0);
    const MomentSet m = moment_set(p);
    if (std::abs(m.m1) > 2.75863 + 1e-6) ++violations;
    if (m.variance < 0.31173 - 1e-6 || m.variance > 8.16228 + 1e-6) ++violations;
  }
  // independent check of the attained maximum mean
  const ShapeParams& a = mean.argmax;
  const double q = quad([&](double z) { return z * pdf(z, a); });
  return pass_if(mean_ok && var_ok && violations == 0,
                 fmt::format("mean [{:.5f}, {:.5f}] vs +/-2.75863 (quadrature at argmax {:.5f}); "
                             "variance [{:.5f}, {:.5f}] vs [0.31173, 8.16228]; {} of 20000 random "
                             "points outside the printed bounds",
                             mean.min, mean.max, q, var.min, var.max, violations));
}

// 5. shape-coefficient extrema and the Pearson inequality
Outcome shape_bounds() {
  BoundSearchOptions opt;
  const BoundResult b1 = bound_search(BoundTarget::SkewB1, opt);
  const BoundResult b2 = bound_search(BoundTarget::KurtB2, opt);
  const bool ok = std::abs(b1.max - 6.70451) <= 0.05 && std::abs(b2.min - 1.22732) <= 0.05 &&
                  std::abs(b2.max - 14.1965) <= 0.05;
  int pearson = 0;
  Rng rng(505);
  for (int i = 0; i < 20000; ++i) {
    const MomentSet m = moment_set(testutil::random_shape(rng, 20.0));
    if (!m.degenerate && m.kurtosis_b2 < m.skewness_b1 + 1.0 - 1e-9) ++pearson;
  }
  return pass_if(ok && pearson == 0,
                 fmt::format("b1 max {:.5f} vs 6.70451; b2 [{:.5f}, {:.5f}] vs [1.22732, 14.1965]; "
                             "{} Pearson violations in 20000 points",
                             b1.max, b2.min, b2.max, pearson));
}

// 6. between one and four modes
Outcome mode_counts() {
  int bad = 0;
  int hist[5] = {0, 0, 0, 0, 0};
  for (const auto& p : testutil::shape_grid(500, 10.0, 606)) {
    const int n = count_modes(p).count;
    if (n < 1 || n > 4) ++bad;
    else ++hist[n];
  }
  return pass_if(bad == 0, fmt::format("500 triples: {} / {} / {} / {} with 1-4 modes, {} violations",
                                       hist[1], hist[2], hist[3], hist[4], bad));
}

// 7. limiting families
Outcome limit_formulas() {
  double worst = 0.0;
  const double breaks[] = {0.0};
  auto qmom = [&](int k, LimitKind kind, const ShapeParams& p) {
    return oracle::integrate([&](double z) { return std::pow(z, k) * limiting_pdf(kind, z, p); }, -60.0,
                             60.0, breaks, 1e-13)
        .value;
  };
  auto check = [&](LimitKind kind, const ShapeParams& p) {
    const double m1 = qmom(1, kind, p), m2 = qmom(2, kind, p), m3 = qmom(3, kind, p),
                 m4 = qmom(4, kind, p);
    const double v = m2 - m1 * m1;
    const double c3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
    const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
    const LimitMoments lm = limit_moments(kind, p);
    worst = std::max({worst, std::abs(lm.mean - m1), std::abs(lm.variance - v)});
    if (lm.skewness_b1) worst = std::max(worst, std::abs(*lm.skewness_b1 - c3 * c3 / (v * v * v)));
    if (lm.kurtosis_b2) worst = std::max(worst, std::abs(*lm.kurtosis_b2 - c4 / (v * v)));
  };
  for (double lam : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    check(LimitKind::GBN2, {0, 0, lam});
    check(LimitKind::GBN6, {0, 0, lam});
  }
  for (const auto& p : testutil::shape_grid(10, 3.0, 707)) {
    check(LimitKind::HalfPlus, p);
    check(LimitKind::HalfMinus, p);
  }
  const double v2 = limit_moments(LimitKind::GBN2, {0, 0, 0}).variance;
  const double v6 = limit_moments(LimitKind::GBN6, {0, 0, 0}).variance;
  const bool spots = std::abs(v2 - 3.0) <= 1e-10 && std::abs(v6 - 7.0) <= 1e-10;
  return pass_if(worst <= 1e-8 && spots,
                 fmt::format("worst error {:.2e}; var(GBN2, 0) = {:.12f}, var(GBN6, 0) = {:.12f}", worst,
                             v2, v6));
}

// 8. sampler: KS at 1% and acceptance-rate law
Outcome sampler() {
  // asymptotic 99% point of the Kolmogorov distribution
  const double ks_crit = 1.6276 / std::sqrt(1e4);
  int ks_fail = 0, rate_fail = 0;
  double worst_ks = 0.0, worst_z = 0.0;
  Rng root(808);
  const auto grid = testutil::shape_grid(20, 3.0, 808);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ShapeParams& p = grid[i];
    Rng rng = root.split(i);
    const SampleBatch s = sample_gabsn(10000, p, rng);
    const double d = testutil::ks_statistic(s.values, [&](double z) { return cdf(z, p); });
    worst_ks = std::max(worst_ks, d);
    if (d > ks_crit) ++ks_fail;

    Rng rng2 = root.split(1000 + i);
    const SampleBatch big = sample_gabsn(100000, p, rng2);
    const double expected = gabsn_acceptance_probability(p);
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(big.n_proposed));
    const double zscore = std::abs(big.acceptance_rate - expected) / se;
    worst_z = std::max(worst_z, zscore);
    if (zscore > 3.0) ++rate_fail;
  }
  return pass_if(ks_fail == 0 && rate_fail == 0,
                 fmt::format("20 triples: max KS {:.4f} (crit {:.4f}), {} KS failures; max rate z {:.2f}, "
                             "{} outside 3 SE",
                             worst_ks, ks_crit, ks_fail, worst_z, rate_fail));
}

// 9. analytic score against finite differences
Outcome gradient_check() {
  Rng rng(909);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    LocScaleParams p;
    p.shape = testutil::random_shape(rng, 3.0);
    p.mu = rng.uniform(-2.0, 2.0);
    p.sigma = std::exp(rng.uniform(-1.0, 1.0));
    std::vector<double> data(50);
    for (double& y : data) y = rng.uniform(-3.0, 3.0);
    const auto s = score(data, p);
    const std::vector<double> x = {p.shape.alpha, p.shape.beta, p.shape.lambda, p.mu, p.sigma};
    const auto fd = oracle::finite_diff_grad(
        [&](std::span<const double> t) { return loglik(data, {{t[0], t[1], t[2]}, t[3], t[4]}); }, x);
    for (int j = 0; j < 5; ++j) worst = std::max(worst, std::abs(s[j] - fd[j]) / std::max(1.0, std::abs(fd[j])));
  }
  return pass_if(worst <= 1e-4, fmt::format("100 points, worst relative error {:.2e}", worst));
}

std::optional<Dataset> try_load(const char* name) {
  try {
    return load_dataset(name);
  } catch (const DatasetError&) {
    return std::nullopt;
  }
}

Outcome lakes_table() {
  if (!try_load("lakes69")) return {Status::Skip, "lakes69 not bundled (not verifiably sourceable)"};
  return {Status::Fail, "lakes69 present but this check is not implemented"};
}

// 11. GABSN fit quality and AIC rank on the WCC sample
Outcome wcc_table() {
  const auto ds = try_load("ais_wcc202");
  if (!ds) return {Status::Skip, "ais_wcc202 not available"};
  const auto rows = reproduce_table(ds->values);
  const FitResult* g = nullptr;
  for (const auto& r : rows) {
    if (r.model == "GABSN") g = &r;
  }
  if (!g) return {Status::Fail, "no GABSN row"};
  const bool best = rows.front().model == "GABSN";
  return pass_if(g->loglik >= -393.288 && best,
                 fmt::format("GABSN loglik {:.3f} (>= -393.288), AIC {:.3f}; best AIC {} ({:.3f}) over {} models",
                             g->loglik, g->aic, rows.front().model, rows.front().aic, rows.size()));
}

// 12. likelihood-ratio rows
Outcome lr_table() {
  const auto ds = try_load("ais_wcc202");
  if (!ds) return {Status::Skip, "ais_wcc202 not available"};
  struct Row {
    const char* null;
    double printed;
  };
  const Row rows[] = {{"gasn", 5.514}, {"absn", 4.09}, {"sn", 6.746}, {"normal", 24.262}};
  bool ok = true;
  std::string detail = "wcc";
  for (const auto& row : rows) {
    const LrTestResult r = lr_test(ds->values, find_model(row.null), find_model("gabsn"));
    ok = ok && std::abs(r.statistic - row.printed) <= 1.0 && r.reject_null;
    detail += fmt::format(" {}: {:.3f} vs {} (df {}, crit {:.3f}{});", row.null, r.statistic, row.printed,
                          r.df, r.critical_value_95, r.reject_null ? ", reject" : ", keep");
  }
  if (!try_load("lakes69")) detail += " lakes rows skipped (dataset not bundled)";
  return pass_if(ok, detail);
}

// 13. parameter recovery at n = 5000
Outcome recovery() {
  const ModelSpec& m = find_model("gabsn");
  const LocScaleParams settings[] = {
      {{1.0, -0.5, 2.0}, 0.0, 1.0},
      {{-0.5, 0.3, -1.0}, 5.0, 2.0},
      {{2.0, 1.0, 0.5}, -1.0, 0.5},
  };
  bool ok = true;
  std::string detail;
  Rng root(1313);
  for (std::size_t s = 0; s < std::size(settings); ++s) {
    const std::vector<double> truth = m.from_gabsn(settings[s]);
    std::vector<int> hits(truth.size(), 0);
    for (int rep = 0; rep < 3; ++rep) {
      Rng rng = root.split(10 * s + rep);
      const SampleBatch sample = sample_loc_scale(5000, settings[s], rng);
      FitOptions opt;
      opt.seed = 10 * s + rep + 1;
      const FitResult f = fit(sample.values, m, opt);
      const auto se = standard_errors(sample.values, m, f.params);
      if (!se) continue;
      for (std::size_t j = 0; j < truth.size(); ++j) {
        if (std::abs(f.params[j] - truth[j]) <= 3.0 * (*se)[j]) ++hits[j];
      }
    }
    const int worst = *std::min_element(hits.begin(), hits.end());
    ok = ok && worst >= 2;
    detail += fmt::format("setting {}: worst parameter within 3 SE in {}/3; ", s + 1, worst);
  }
  return pass_if(ok, detail);
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only, known_red;
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--known-red", known_red, "criteria expected to fail");
  CLI11_PARSE(app, argc, argv);

  const Criterion criteria[] = {
      {1, "normalizer oracle", 30, normalizer_oracle},
      {2, "cdf oracle", 0, cdf_oracle},
      {3, "moment oracle", 0, moment_oracle},
      {4, "mean/variance bounds", 300, mean_variance_bounds},
      {5, "b1/b2 bounds", 0, shape_bounds},
      {6, "mode count", 0, mode_counts},
      {7, "limit formulas", 0, limit_formulas},
      {8, "sampler", 120, sampler},
      {9, "score vs finite differences", 0, gradient_check},
      {10, "lakes table", 600, lakes_table},
      {11, "wcc table", 600, wcc_table},
      {12, "lr tests", 0, lr_table},
      {13, "parameter recovery", 0, recovery},
  };

  const std::set<int> selected(only.begin(), only.end());
  const std::set<int> red(known_red.begin(), known_red.end());
  int unexpected = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status == Status::Pass && c.time_limit > 0 && secs > c.time_limit) {
      o.status = Status::Fail;
      o.detail += fmt::format(" over the {:.0f} s limit", c.time_limit);
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    std::string note;
    if (red.count(c.id)) {
      if (o.status == Status::Fail) note = " [known red]";
      else if (o.status == Status::Pass) note = " [known red but passed: update the list]";
    }
    std::printf("criterion %2d %-28s %s  %.1fs  %s%s\n", c.id, c.name, tag, secs, o.detail.c_str(),
                note.c_str());
    std::fflush(stdout);
    if (o.status == Status::Fail && !red.count(c.id)) ++unexpected;
    if (o.status == Status::Pass && red.count(c.id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
