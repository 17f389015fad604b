#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gabsn {

/// sqrt(2/pi), the half-normal mean.
inline constexpr double kB = 0.79788456080286535588;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

/// Shape triple (alpha, beta, lambda) of the generalized alpha-beta-skew-normal
/// family. alpha and beta drive the polynomial skew factor 1 - a z - b z^3,
/// lambda is the Azzalini-type asymmetry.
struct ShapeParams {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;

  /// lambda / sqrt(1 + lambda^2)
  [[nodiscard]] double delta() const { return lambda / std::sqrt(1.0 + lambda * lambda); }
  [[nodiscard]] static constexpr double b() { return kB; }
  [[nodiscard]] bool finite() const {
    return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(lambda);
  }

  friend bool operator==(const ShapeParams&, const ShapeParams&) = default;
};

/// Location-scale extension Y = mu + sigma Z.
struct LocScaleParams {
  ShapeParams shape;
  double mu = 0.0;
  double sigma = 1.0;

  friend bool operator==(const LocScaleParams&, const LocScaleParams&) = default;
};

inline void require_positive_scale(double sigma, const char* where) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument(std::string(where) + ": scale must be finite and > 0, got " +
                                std::to_string(sigma));
  }
}

}  // namespace gabsn
