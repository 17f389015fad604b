#include <gtest/gtest.h>

#include "gabsn/plot.hpp"
#include "gabsn/report.hpp"
#include "gabsn/core.hpp"
#include "gabsn/dataset.hpp"

using namespace gabsn;
using nlohmann::json;

template <class T>
T round_trip(const T& x) {
  return json::parse(json(x).dump()).get<T>();
}

TEST(Report, ParamsRoundTrip) {
  const LocScaleParams p{{0.1, -2.5e-7, 3.0 / 7.0}, 58.333, 6.489};
  EXPECT_EQ(round_trip(p), p);
}

TEST(Report, MomentSetRoundTrip) {
  const MomentSet m{0.1, 1.2, 0.3, 3.4, 1.19, 0.01, 3.1, false};
  const MomentSet r = round_trip(m);
  EXPECT_EQ(r.m1, m.m1);
  EXPECT_EQ(r.kurtosis_b2, m.kurtosis_b2);
  EXPECT_EQ(json(r), json(m));
}

TEST(Report, FitAndLrRoundTrip) {
  FitResult f;
  f.model = "GABSN";
  f.param_names = {"mu", "sigma"};
  f.params = {1.0 / 3.0, 2.0};
  f.loglik = -392.75871234;
  f.aic = 2 * 2 - 2 * f.loglik;
  f.bic = 3.0;
  f.n_obs = 202;
  f.converged = true;
  f.n_restarts_used = 20;
  f.gradient_norm_at_opt = 1e-7;
  f.evaluations = 12345;
  f.start_logliks = {-500.0, -400.5};
  EXPECT_EQ(json(round_trip(f)), json(f));
  f.error = "boom";
  EXPECT_EQ(round_trip(f).error, f.error);

  LrTestResult lr;
  lr.statistic = 4.09;
  lr.raw_statistic = 4.09;
  lr.df = 1;
  lr.critical_value_95 = 3.841458820694124;
  lr.reject_null = true;
  lr.nested_fit = f;
  lr.full_fit = f;
  EXPECT_EQ(json(round_trip(lr)), json(lr));
}

TEST(Report, BoundRoundTrip) {
  BoundResult b{-2.77, 2.77, {1, 2, 3}, {-1, -2, -3}, 99};
  EXPECT_EQ(json(round_trip(b)), json(b));
}

TEST(Plot, HistogramRules) {
  const std::vector<double> small{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const Histogram h = histogram(small);
  EXPECT_EQ(h.rule, "sturges");
  EXPECT_EQ(h.counts.size(), 5u);  // ceil(log2 10) + 1
  int total = 0;
  for (int c : h.counts) total += c;
  EXPECT_EQ(total, 10);
  const auto wcc = load_dataset("ais_wcc202").values;
  const Histogram w = histogram(wcc);
  EXPECT_EQ(w.rule, "freedman-diaconis");
  double area = 0.0;
  for (std::size_t i = 0; i < w.density.size(); ++i) area += w.density[i] * (w.edges[i + 1] - w.edges[i]);
  EXPECT_NEAR(area, 1.0, 1e-12);
}

TEST(Plot, CurvesAreDensityValues) {
  const auto wcc = load_dataset("ais_wcc202").values;
  const ModelSpec& m = find_model("gabsn");
  const std::vector<double> p{9.729, 1.508, -0.669, 0.411, 0.428};
  const Curve c = density_curve(wcc, m, p, "GABSN");
  ASSERT_EQ(c.x.size(), 512u);
  const auto [mn, mx] = std::minmax_element(wcc.begin(), wcc.end());
  EXPECT_NEAR(c.x.front(), *mn - 0.1 * (*mx - *mn), 1e-12);
  EXPECT_NEAR(c.x.back(), *mx + 0.1 * (*mx - *mn), 1e-12);
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    EXPECT_DOUBLE_EQ(c.y[i], pdf_loc_scale(c.x[i], m.to_gabsn(p)));
  }
  const std::string csv = plot_csv(histogram(wcc), {});
  EXPECT_EQ(csv.rfind("series,x,y\n", 0), 0u);
  EXPECT_EQ(csv.find("GABSN"), std::string::npos);
}
