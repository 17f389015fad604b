#include "gabsn/report.hpp"

namespace gabsn {

using nlohmann::json;

void to_json(json& j, const ShapeParams& p) {
  j = json{{"alpha", p.alpha}, {"beta", p.beta}, {"lambda", p.lambda}};
}
void from_json(const json& j, ShapeParams& p) {
  j.at("alpha").get_to(p.alpha);
  j.at("beta").get_to(p.beta);
  j.at("lambda").get_to(p.lambda);
}

void to_json(json& j, const LocScaleParams& p) {
  j = json(p.shape);
  j["mu"] = p.mu;
  j["sigma"] = p.sigma;
}
void from_json(const json& j, LocScaleParams& p) {
  j.get_to(p.shape);
  j.at("mu").get_to(p.mu);
  j.at("sigma").get_to(p.sigma);
}

void to_json(json& j, const MomentSet& m) {
  j = json{{"m1", m.m1},
           {"m2", m.m2},
           {"m3", m.m3},
           {"m4", m.m4},
           {"variance", m.variance},
           {"skewness_b1", m.skewness_b1},
           {"kurtosis_b2", m.kurtosis_b2},
           {"degenerate", m.degenerate}};
}
void from_json(const json& j, MomentSet& m) {
  j.at("m1").get_to(m.m1);
  j.at("m2").get_to(m.m2);
  j.at("m3").get_to(m.m3);
  j.at("m4").get_to(m.m4);
  j.at("variance").get_to(m.variance);
  j.at("skewness_b1").get_to(m.skewness_b1);
  j.at("kurtosis_b2").get_to(m.kurtosis_b2);
  j.at("degenerate").get_to(m.degenerate);
}

void to_json(json& j, const BoundResult& r) {
  j = json{{"min", r.min},       {"max", r.max},          {"argmin", r.argmin},
           {"argmax", r.argmax}, {"evaluations", r.evaluations}};
}
void from_json(const json& j, BoundResult& r) {
  j.at("min").get_to(r.min);
  j.at("max").get_to(r.max);
  j.at("argmin").get_to(r.argmin);
  j.at("argmax").get_to(r.argmax);
  j.at("evaluations").get_to(r.evaluations);
}

void to_json(json& j, const FitResult& r) {
  json params = json::object();
  for (std::size_t i = 0; i < r.params.size(); ++i) params[r.param_names[i]] = r.params[i];
  j = json{{"model", r.model},
           {"param_names", r.param_names},
           {"params", r.params},
           {"named_params", params},
           {"loglik", r.loglik},
           {"aic", r.aic},
           {"bic", r.bic},
           {"n_obs", r.n_obs},
           {"converged", r.converged},
           {"n_restarts_used", r.n_restarts_used},
           {"gradient_norm_at_opt", r.gradient_norm_at_opt},
           {"evaluations", r.evaluations},
           {"start_logliks", r.start_logliks}};
  j["error"] = r.error ? json(*r.error) : json(nullptr);
}
void from_json(const json& j, FitResult& r) {
  j.at("model").get_to(r.model);
  j.at("param_names").get_to(r.param_names);
  j.at("params").get_to(r.params);
  j.at("loglik").get_to(r.loglik);
  j.at("aic").get_to(r.aic);
  j.at("bic").get_to(r.bic);
  j.at("n_obs").get_to(r.n_obs);
  j.at("converged").get_to(r.converged);
  j.at("n_restarts_used").get_to(r.n_restarts_used);
  j.at("gradient_norm_at_opt").get_to(r.gradient_norm_at_opt);
  j.at("evaluations").get_to(r.evaluations);
  j.at("start_logliks").get_to(r.start_logliks);
  if (j.contains("error") && !j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  else r.error.reset();
}

void to_json(json& j, const LrTestResult& r) {
  j = json{{"statistic", r.statistic},
           {"raw_statistic", r.raw_statistic},
           {"df", r.df},
           {"critical_value_95", r.critical_value_95},
           {"reject_null", r.reject_null},
           {"nested_fit", r.nested_fit},
           {"full_fit", r.full_fit}};
}
void from_json(const json& j, LrTestResult& r) {
  j.at("statistic").get_to(r.statistic);
  j.at("raw_statistic").get_to(r.raw_statistic);
  j.at("df").get_to(r.df);
  j.at("critical_value_95").get_to(r.critical_value_95);
  j.at("reject_null").get_to(r.reject_null);
  j.at("nested_fit").get_to(r.nested_fit);
  j.at("full_fit").get_to(r.full_fit);
}

}  // namespace gabsn
