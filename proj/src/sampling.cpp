#include "gabsn/sampling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gabsn/core.hpp"
#include "gabsn/oracle.hpp"

namespace gabsn {
namespace {

// log of ABSN density over the N(0, s^2) density
double log_ratio(double z, double alpha, double beta, double scale, double log_norm) {
  return std::log(skew_factor(z, alpha, beta)) - log_norm + std::log(scale) -
         0.5 * z * z * (1.0 - 1.0 / (scale * scale));
}

double envelope_bound(double alpha, double beta, double scale) {
  const double log_norm = std::log(absn_normalizer(alpha, beta));
  auto f = [&](double z) { return log_ratio(z, alpha, beta, scale, log_norm); };
  constexpr int grid = 4001;
  const double lo = -10.0 * scale;
  const double step = 20.0 * scale / (grid - 1);
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = f(lo + i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double left = lo + std::max(0, best - 1) * step;
  const double right = lo + std::min(grid - 1, best + 1) * step;
  const auto m = oracle::maximize_1d(f, left, right, 1e-12);
  return std::exp(std::max(m.max, best_val));
}

struct AbsnSampler {
  double alpha;
  double beta;
  AbsnEnvelope env;
  double log_norm;

  AbsnSampler(double a, double b)
      : alpha(a), beta(b), env(absn_envelope(a, b)), log_norm(std::log(absn_normalizer(a, b))) {}

  // One accepted draw; adds the number of proposals to `proposed`.
  double draw(Rng& rng, std::uint64_t& proposed) const {
    const double log_bound = std::log(env.bound);
    for (;;) {
      const double z = env.scale * rng.normal();
      const double u = rng.uniform();
      ++proposed;
      if (std::log(u) + log_bound <= log_ratio(z, alpha, beta, env.scale, log_norm)) return z;
    }
  }
};

}  // namespace

AbsnEnvelope absn_envelope(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("absn_envelope: parameters must be finite");
  }
  if (alpha == 0.0 && beta == 0.0) return {1.0, 1.0};
  constexpr std::array<double, 7> candidates{1.1, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0};
  AbsnEnvelope best{0.0, std::numeric_limits<double>::infinity()};
  for (double s : candidates) {
    const double m = envelope_bound(alpha, beta, s);
    if (m < best.bound) best = {s, m};
  }
  if (!std::isfinite(best.bound) || !(best.bound >= 1.0 - 1e-9)) {
    throw std::runtime_error("absn_envelope: no finite envelope for alpha=" + std::to_string(alpha) +
                             ", beta=" + std::to_string(beta));
  }
  best.bound *= 1.0 + 1e-9;
  return best;
}

SampleBatch sample_absn(std::size_t n, double alpha, double beta, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_absn: n must be >= 1");
  const AbsnSampler sampler(alpha, beta);
  SampleBatch batch;
  batch.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) batch.values.push_back(sampler.draw(rng, batch.n_proposed));
  batch.acceptance_rate = static_cast<double>(n) / static_cast<double>(batch.n_proposed);
  return batch;
}

double gabsn_acceptance_probability(const ShapeParams& p) {
  return normalizing_constant(p) / absn_normalizer(p.alpha, p.beta);
}

SampleBatch sample_gabsn(std::size_t n, const ShapeParams& p, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_gabsn: n must be >= 1");
  if (!p.finite()) throw std::invalid_argument("sample_gabsn: parameters must be finite");
  const AbsnSampler sampler(p.alpha, p.beta);
  SampleBatch batch;
  batch.values.reserve(n);
  std::uint64_t inner = 0;
  while (batch.values.size() < n) {
    const double w = sampler.draw(rng, inner);
    const double x = rng.normal();
    ++batch.n_proposed;
    if (p.lambda * w > x) batch.values.push_back(w);
  }
  batch.acceptance_rate = static_cast<double>(n) / static_cast<double>(batch.n_proposed);
  return batch;
}

SampleBatch sample_loc_scale(std::size_t n, const LocScaleParams& p, Rng& rng) {
  require_positive_scale(p.sigma, "sample_loc_scale");
  SampleBatch batch = sample_gabsn(n, p.shape, rng);
  for (double& v : batch.values) v = p.mu + p.sigma * v;
  return batch;
}

}  // namespace gabsn
