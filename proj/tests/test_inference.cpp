#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gabsn/core.hpp"
#include "gabsn/dataset.hpp"
#include "gabsn/inference.hpp"
#include "gabsn/oracle.hpp"
#include "gabsn/sampling.hpp"
#include "test_util.hpp"

using namespace gabsn;

namespace {

const std::vector<double>& wcc() {
  static const std::vector<double> v = load_dataset("ais_wcc202").values;
  return v;
}

FitOptions quick() {
  FitOptions o;
  o.global_budget = 4000;
  o.multistarts = 8;
  return o;
}

}  // namespace

TEST(Inference, SinglePointLoglik) {
  const double y[] = {0.0};
  EXPECT_NEAR(loglik(y, {}), -0.9189385, 1e-7);
}

TEST(Inference, LoglikIsSumOfLogDensities) {
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const LocScaleParams p{testutil::random_shape(rng, 4.0), rng.uniform(5, 9), rng.uniform(0.5, 3)};
    double sum = 0.0;
    for (double y : wcc()) sum += std::log(pdf_loc_scale(y, p));
    EXPECT_NEAR(loglik(wcc(), p), sum, 1e-10 * std::max(1.0, std::abs(sum)));
  }
  for (const auto& m : model_zoo()) {
    std::vector<double> th;
    for (std::size_t j = 0; j < m.n_params(); ++j) {
      th.push_back(m.is_scale[j] ? 1.7 : (m.param_names[j] == "mu" ? 7.0 : 0.3));
    }
    double sum = 0.0;
    for (double y : wcc()) sum += std::log(m.density(y, th));
    EXPECT_NEAR(evaluate_loglik(wcc(), m, th).value, sum, 1e-10 * std::abs(sum)) << m.name;
  }
}

TEST(Inference, UnderflowIsFlagged) {
  const double y[] = {0.0, 100.0};
  const LogLik ll = evaluate_loglik(y, {{0, 0, 50}, 0.0, 1.0});
  // Phi(50 * 100) is fine but phi(100) underflows exp; the log form stays finite
  EXPECT_FALSE(ll.underflow);
  const double far[] = {-1e200};
  const LogLik bad = evaluate_loglik(far, {{0, 0, 1}, 0.0, 1.0});
  EXPECT_TRUE(bad.underflow);
  EXPECT_EQ(bad.value, kLogLikSentinel);
}

TEST(Inference, PublishedWccGabsnRow) {
  const LocScaleParams p{{0.411, 0.428, -0.669}, 9.729, 1.508};
  EXPECT_NEAR(loglik(wcc(), p), -392.788, 0.1);
}

TEST(Inference, ScoreMatchesFiniteDifferences) {
  Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    const LocScaleParams p{testutil::random_shape(rng, 3.0), rng.uniform(-1, 1), rng.uniform(0.5, 2)};
    Rng data_rng = rng.split(static_cast<std::uint64_t>(i));
    const auto data = sample_loc_scale(50, {testutil::random_shape(data_rng, 2.0), 0.0, 1.0}, data_rng).values;
    const auto s = score(data, p);
    const double x[] = {p.shape.alpha, p.shape.beta, p.shape.lambda, p.mu, p.sigma};
    const auto fd = oracle::finite_diff_grad(
        [&](std::span<const double> v) { return loglik(data, {{v[0], v[1], v[2]}, v[3], v[4]}); }, x);
    for (int j = 0; j < 5; ++j) {
      EXPECT_NEAR(s[j], fd[j], 1e-4 * std::max(1.0, std::abs(fd[j]))) << i << " " << j;
    }
  }
}

TEST(Inference, NormalScoreIdentity) {
  const auto& y = wcc();
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  const auto s = score(y, {{}, mean, std::sqrt(ss / n)});
  EXPECT_NEAR(s[3], 0.0, 1e-10);
  EXPECT_NEAR(s[4], 0.0, 1e-9);
}

TEST(Inference, FitWccGabsn) {
  const FitResult r = fit(wcc(), find_model("gabsn"));
  EXPECT_GE(r.loglik, -393.288);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.gradient_norm_at_opt, 1e-4);
  EXPECT_GE(r.n_restarts_used, 20);
  EXPECT_DOUBLE_EQ(r.aic, 2.0 * 5 - 2.0 * r.loglik);
  EXPECT_DOUBLE_EQ(r.bic, 5 * std::log(202.0) - 2.0 * r.loglik);
  for (double s : r.start_logliks) EXPECT_GE(r.loglik, s);
  const auto s = score(wcc(), find_model("gabsn").to_gabsn(r.params));
  for (double c : s) EXPECT_LT(std::abs(c), 1e-3);
}

TEST(Inference, NormalFitIsClosedForm) {
  const FitResult r = fit(wcc(), find_model("normal"), quick());
  const double n = 202.0;
  const double mean = std::accumulate(wcc().begin(), wcc().end(), 0.0) / n;
  EXPECT_NEAR(*r.param("mu"), mean, 1e-6);
  EXPECT_NEAR(r.loglik, -404.895, 1e-3);
}

TEST(Inference, LaplaceFitMatchesMedianRule) {
  std::vector<double> y = wcc();
  const FitResult r = fit(y, find_model("laplace"), quick());
  std::sort(y.begin(), y.end());
  const double med = 0.5 * (y[100] + y[101]);
  double mad = 0.0;
  for (double v : y) mad += std::abs(v - med);
  mad /= 202.0;
  // any point between the two middle order statistics is a median
  EXPECT_GE(*r.param("mu"), y[100] - 1e-6);
  EXPECT_LE(*r.param("mu"), y[101] + 1e-6);
  EXPECT_NEAR(*r.param("beta"), mad, 1e-4);
}

TEST(Inference, Equivariance) {
  const ModelSpec& m = find_model("gasn");
  const FitResult a = fit(wcc(), m, quick());
  std::vector<double> moved;
  const double c = -40.0, s = 3.5;
  for (double v : wcc()) moved.push_back(s * v + c);
  const FitResult b = fit(moved, m, quick());
  EXPECT_NEAR(*b.param("mu"), s * *a.param("mu") + c, 1e-3 * s);
  EXPECT_NEAR(*b.param("sigma"), s * *a.param("sigma"), 1e-3 * s);
  EXPECT_NEAR(*b.param("lambda"), *a.param("lambda"), 1e-3);
  EXPECT_NEAR(*b.param("alpha"), *a.param("alpha"), 1e-3);
  EXPECT_NEAR(b.loglik, a.loglik - 202.0 * std::log(s), 1e-3);
}

TEST(Inference, FitIsDeterministic) {
  const FitResult a = fit(wcc(), find_model("sn"), quick());
  FitOptions threaded = quick();
  threaded.threads = 3;
  const FitResult b = fit(wcc(), find_model("sn"), threaded);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.loglik, b.loglik);
}

TEST(Inference, RejectsDegenerateData) {
  const std::vector<double> flat(30, 2.0);
  EXPECT_THROW(fit(flat, find_model("sn")), std::invalid_argument);
  const std::vector<double> tiny{1.0, 2.0, 3.0};
  EXPECT_THROW(fit(tiny, find_model("gabsn")), std::invalid_argument);
}

TEST(Inference, ChiSquareCriticalValues) {
  EXPECT_NEAR(chi_square_critical_95(1), 3.841, 1e-3);
  EXPECT_NEAR(chi_square_critical_95(2), 5.991, 1e-3);
  EXPECT_NEAR(chi_square_critical_95(3), 7.815, 1e-3);
  EXPECT_THROW(chi_square_critical_95(0), std::invalid_argument);
}

TEST(Inference, LrTests) {
  const LrTestResult r = lr_test(wcc(), find_model("absn"), find_model("gabsn"), FitOptions{});
  EXPECT_EQ(r.df, 1);
  EXPECT_NEAR(r.statistic, 4.09, 1.0);
  EXPECT_TRUE(r.reject_null);
  EXPECT_GE(r.raw_statistic, -1e-6);
  EXPECT_EQ(r.reject_null, r.statistic > r.critical_value_95);

  const LrTestResult same = lr_test(wcc(), find_model("sn"), find_model("sn"), quick());
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_FALSE(same.reject_null);

  EXPECT_THROW(lr_test(wcc(), find_model("logistic"), find_model("gabsn"), quick()), std::invalid_argument);
  EXPECT_THROW(lr_test(wcc(), find_model("gabsn"), find_model("sn"), quick()), std::invalid_argument);
}

TEST(Inference, StandardErrors) {
  const ModelSpec& m = find_model("sn");
  const FitResult r = fit(wcc(), m, quick());
  const auto se = standard_errors(wcc(), m, r.params);
  ASSERT_TRUE(se.has_value());
  for (double v : *se) {
    EXPECT_GT(v, 0.0);
    EXPECT_TRUE(std::isfinite(v));
  }
}
