#pragma once

// Comparison models for model selection: the normal, logistic and Laplace
// kernels with their skew-symmetric, alpha-skew and alpha-beta-skew variants.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gabsn/types.hpp"

namespace gabsn {

enum class Kernel { Normal, Logistic, Laplace };

/// Position of a parameter in the GABSN score vector (alpha, beta, lambda, mu, sigma).
enum class ScoreSlot : int { Alpha = 0, Beta = 1, Lambda = 2, Mu = 3, Sigma = 4 };

struct ModelSpec {
  using LogDensity = std::function<double(double y, std::span<const double> params)>;

  std::string name;   // lowercase identifier, e.g. "gabsn"
  std::string label;  // table label, e.g. "GABSN"
  Kernel kernel = Kernel::Normal;
  /// Parameter names in table column order (mu, sigma, lambda, alpha, beta);
  /// logistic/Laplace kernels call their scale "beta" as the tables do.
  std::vector<std::string> param_names;
  /// Which parameters are strictly positive scales.
  std::vector<bool> is_scale;
  LogDensity log_density;
  std::optional<std::string> nested_in;
  bool smooth = true;
  bool in_tables = true;
  /// Normal-kernel models only: score slot of each parameter.
  std::vector<ScoreSlot> gabsn_slots;

  [[nodiscard]] std::size_t n_params() const { return param_names.size(); }
  [[nodiscard]] double density(double y, std::span<const double> params) const;
  /// Normal-kernel models only: the equivalent GABSN parameters.
  [[nodiscard]] LocScaleParams to_gabsn(std::span<const double> params) const;
  /// Normal-kernel models only: restriction of GABSN parameters to this model.
  [[nodiscard]] std::vector<double> from_gabsn(const LocScaleParams& p) const;
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view param) const;
};

class UnknownModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All models, in Table order followed by GBSN (not tabulated).
const std::vector<ModelSpec>& model_zoo();

/// Lookup by name or label, case-insensitive. Throws UnknownModel.
const ModelSpec& find_model(std::string_view name);

/// Density of a named model; throws for unknown names or a non-positive scale.
double zoo_density(std::string_view name, double y, std::span<const double> params);

/// True when `nested` is `full` with some parameters pinned at zero: same
/// kernel and its parameter names are a subset of full's.
bool is_restriction(const ModelSpec& nested, const ModelSpec& full);

}  // namespace gabsn
