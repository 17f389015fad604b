#include "gabsn/zoo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "gabsn/core.hpp"
#include "gabsn/special.hpp"

namespace gabsn {
namespace {

constexpr double kLog2 = std::numbers::ln2;

double log_normal_kernel(double w) { return -0.5 * w * w - kLogSqrt2Pi; }

// standard logistic density and CDF, in logs
double log_logistic_kernel(double w) {
  const double a = std::abs(w);
  return -a - 2.0 * std::log1p(std::exp(-a));
}
double log_logistic_cdf(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

// standard Laplace density and CDF, in logs
double log_laplace_kernel(double w) { return -std::abs(w) - kLog2; }
double log_laplace_cdf(double x) {
  return x < 0.0 ? x - kLog2 : std::log1p(-0.5 * std::exp(-x));
}

double log_alpha_factor(double w, double alpha) {
  const double d = 1.0 - alpha * w;
  return std::log(d * d + 1.0);
}

// Second moments of the standard logistic and Laplace kernels.
constexpr double kLogisticM2 = std::numbers::pi * std::numbers::pi / 3.0;
constexpr double kLaplaceM2 = 2.0;

using P = std::span<const double>;

ModelSpec make(std::string name, std::string label, Kernel kernel,
               std::vector<std::string> params, ModelSpec::LogDensity f,
               std::optional<std::string> nested_in, bool in_tables = true) {
  ModelSpec m;
  m.name = std::move(name);
  m.label = std::move(label);
  m.kernel = kernel;
  m.param_names = std::move(params);
  for (const auto& p : m.param_names) m.is_scale.push_back(p == "sigma" || (kernel != Kernel::Normal && p == "beta"));
  m.log_density = std::move(f);
  m.nested_in = std::move(nested_in);
  m.smooth = kernel != Kernel::Laplace;
  m.in_tables = in_tables;
  if (kernel == Kernel::Normal) {
    for (const auto& p : m.param_names) {
      if (p == "alpha") m.gabsn_slots.push_back(ScoreSlot::Alpha);
      else if (p == "beta") m.gabsn_slots.push_back(ScoreSlot::Beta);
      else if (p == "lambda") m.gabsn_slots.push_back(ScoreSlot::Lambda);
      else if (p == "mu") m.gabsn_slots.push_back(ScoreSlot::Mu);
      else m.gabsn_slots.push_back(ScoreSlot::Sigma);
    }
  }
  return m;
}

// Generic normal-kernel model through the GABSN density.
ModelSpec::LogDensity via_gabsn(std::vector<std::string> names) {
  return [names = std::move(names)](double y, P th) {
    LocScaleParams p;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& n = names[i];
      if (n == "mu") p.mu = th[i];
      else if (n == "sigma") p.sigma = th[i];
      else if (n == "lambda") p.shape.lambda = th[i];
      else if (n == "alpha") p.shape.alpha = th[i];
      else if (n == "beta") p.shape.beta = th[i];
    }
    return log_pdf_loc_scale(y, p);
  };
}

std::vector<ModelSpec> build_zoo() {
  std::vector<ModelSpec> z;
  z.push_back(make("normal", "N", Kernel::Normal, {"mu", "sigma"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "normal");
                     return log_normal_kernel((y - t[0]) / t[1]) - std::log(t[1]);
                   },
                   "sn"));
  z.push_back(make("logistic", "LG", Kernel::Logistic, {"mu", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "logistic");
                     return log_logistic_kernel((y - t[0]) / t[1]) - std::log(t[1]);
                   },
                   "slg"));
  z.push_back(make("laplace", "La", Kernel::Laplace, {"mu", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "laplace");
                     return log_laplace_kernel((y - t[0]) / t[1]) - std::log(t[1]);
                   },
                   "sla"));
  z.push_back(make("sn", "SN", Kernel::Normal, {"mu", "sigma", "lambda"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "sn");
                     const double w = (y - t[0]) / t[1];
                     return kLog2 + log_normal_kernel(w) + log_norm_cdf(t[2] * w) - std::log(t[1]);
                   },
                   "gasn"));
  z.push_back(make("slg", "SLG", Kernel::Logistic, {"mu", "lambda", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[2], "slg");
                     const double w = (y - t[0]) / t[2];
                     return kLog2 + log_logistic_kernel(w) + log_logistic_cdf(t[1] * w) - std::log(t[2]);
                   },
                   std::nullopt));
  z.push_back(make("sla", "SLa", Kernel::Laplace, {"mu", "lambda", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[2], "sla");
                     const double w = (y - t[0]) / t[2];
                     return kLog2 + log_laplace_kernel(w) + log_laplace_cdf(t[1] * w) - std::log(t[2]);
                   },
                   std::nullopt));
  z.push_back(make("asn", "ASN", Kernel::Normal, {"mu", "sigma", "alpha"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "asn");
                     const double w = (y - t[0]) / t[1];
                     return log_alpha_factor(w, t[2]) - std::log(2.0 + t[2] * t[2]) +
                            log_normal_kernel(w) - std::log(t[1]);
                   },
                   "absn"));
  z.push_back(make("asla", "ASLa", Kernel::Laplace, {"mu", "alpha", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[2], "asla");
                     const double w = (y - t[0]) / t[2];
                     return log_alpha_factor(w, t[1]) - std::log(2.0 + kLaplaceM2 * t[1] * t[1]) +
                            log_laplace_kernel(w) - std::log(t[2]);
                   },
                   std::nullopt));
  z.push_back(make("aslg", "ASLG", Kernel::Logistic, {"mu", "alpha", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[2], "aslg");
                     const double w = (y - t[0]) / t[2];
                     return log_alpha_factor(w, t[1]) - std::log(2.0 + kLogisticM2 * t[1] * t[1]) +
                            log_logistic_kernel(w) - std::log(t[2]);
                   },
                   std::nullopt));
  z.push_back(make("absn", "ABSN", Kernel::Normal, {"mu", "sigma", "alpha", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "absn");
                     const double w = (y - t[0]) / t[1];
                     return std::log(skew_factor(w, t[2], t[3])) -
                            std::log(absn_normalizer(t[2], t[3])) + log_normal_kernel(w) -
                            std::log(t[1]);
                   },
                   "gabsn"));
  z.push_back(make("bsn", "BSN", Kernel::Normal, {"mu", "sigma", "beta"},
                   [](double y, P t) {
                     require_positive_scale(t[1], "bsn");
                     const double w = (y - t[0]) / t[1];
                     return std::log(skew_factor(w, 0.0, t[2])) -
                            std::log(absn_normalizer(0.0, t[2])) + log_normal_kernel(w) -
                            std::log(t[1]);
                   },
                   "absn"));
  z.push_back(make("gasn", "GASN", Kernel::Normal, {"mu", "sigma", "lambda", "alpha"},
                   via_gabsn({"mu", "sigma", "lambda", "alpha"}), "gabsn"));
  z.push_back(make("gabsn", "GABSN", Kernel::Normal, {"mu", "sigma", "lambda", "alpha", "beta"},
                   via_gabsn({"mu", "sigma", "lambda", "alpha", "beta"}), std::nullopt));
  z.push_back(make("gbsn", "GBSN", Kernel::Normal, {"mu", "sigma", "lambda", "beta"},
                   via_gabsn({"mu", "sigma", "lambda", "beta"}), "gabsn", false));
  return z;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

double ModelSpec::density(double y, std::span<const double> params) const {
  if (kernel == Kernel::Normal) return pdf_loc_scale(y, to_gabsn(params));
  return std::exp(log_density(y, params));
}

LocScaleParams ModelSpec::to_gabsn(std::span<const double> params) const {
  if (kernel != Kernel::Normal) throw std::logic_error(name + " has no GABSN embedding");
  LocScaleParams p;
  for (std::size_t i = 0; i < gabsn_slots.size(); ++i) {
    switch (gabsn_slots[i]) {
      case ScoreSlot::Alpha: p.shape.alpha = params[i]; break;
      case ScoreSlot::Beta: p.shape.beta = params[i]; break;
      case ScoreSlot::Lambda: p.shape.lambda = params[i]; break;
      case ScoreSlot::Mu: p.mu = params[i]; break;
      case ScoreSlot::Sigma: p.sigma = params[i]; break;
    }
  }
  return p;
}

std::vector<double> ModelSpec::from_gabsn(const LocScaleParams& p) const {
  if (kernel != Kernel::Normal) throw std::logic_error(name + " has no GABSN embedding");
  std::vector<double> out;
  for (auto slot : gabsn_slots) {
    switch (slot) {
      case ScoreSlot::Alpha: out.push_back(p.shape.alpha); break;
      case ScoreSlot::Beta: out.push_back(p.shape.beta); break;
      case ScoreSlot::Lambda: out.push_back(p.shape.lambda); break;
      case ScoreSlot::Mu: out.push_back(p.mu); break;
      case ScoreSlot::Sigma: out.push_back(p.sigma); break;
    }
  }
  return out;
}

std::optional<std::size_t> ModelSpec::index_of(std::string_view param) const {
  for (std::size_t i = 0; i < param_names.size(); ++i) {
    if (param_names[i] == param) return i;
  }
  return std::nullopt;
}

const std::vector<ModelSpec>& model_zoo() {
  static const std::vector<ModelSpec> zoo = build_zoo();
  return zoo;
}

const ModelSpec& find_model(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& m : model_zoo()) {
    if (m.name == key || lower(m.label) == key) return m;
  }
  throw UnknownModel("unknown model '" + std::string(name) + "'");
}

double zoo_density(std::string_view name, double y, std::span<const double> params) {
  const ModelSpec& m = find_model(name);
  if (params.size() != m.n_params()) {
    throw std::invalid_argument(m.name + ": expected " + std::to_string(m.n_params()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  return m.density(y, params);
}

bool is_restriction(const ModelSpec& nested, const ModelSpec& full) {
  if (nested.kernel != full.kernel) return false;
  return std::all_of(nested.param_names.begin(), nested.param_names.end(),
                     [&](const std::string& p) { return full.index_of(p).has_value(); });
}

}  // namespace gabsn
