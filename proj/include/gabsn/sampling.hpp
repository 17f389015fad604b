#pragma once

// Random variates for ABSN and GABSN.
//
// GABSN variates use the hidden-truncation representation: draw W ~ ABSN(a, b)
// and X ~ N(0, 1) independently and keep W when lambda W > X. ABSN itself is
// drawn by rejection from a N(0, s^2) proposal.
//
// Stream order per GABSN attempt: the ABSN proposal normal, its acceptance
// uniform (repeated until the ABSN draw is accepted), then the normal X.

#include <cstdint>
#include <vector>

#include "gabsn/rng.hpp"
#include "gabsn/types.hpp"

namespace gabsn {

struct SampleBatch {
  std::vector<double> values;
  double acceptance_rate = 1.0;  // values.size() / n_proposed
  std::uint64_t n_proposed = 0;
};

/// Rejection envelope for ABSN(alpha, beta) against N(0, scale^2).
struct AbsnEnvelope {
  double scale = 1.0;
  double bound = 1.0;  // sup of target / proposal density
};

/// Picks the proposal scale from a fixed candidate list to minimize the bound;
/// the supremum is located by grid search over [-10 s, 10 s] and golden-section
/// refinement. Throws std::runtime_error if the bound is not finite.
AbsnEnvelope absn_envelope(double alpha, double beta);

SampleBatch sample_absn(std::size_t n, double alpha, double beta, Rng& rng);

/// Expected acceptance probability of the lambda W > X step:
/// C(a, b, l) / (2 + a^2 + 15 b^2 + 6 a b).
double gabsn_acceptance_probability(const ShapeParams& p);

SampleBatch sample_gabsn(std::size_t n, const ShapeParams& p, Rng& rng);

SampleBatch sample_loc_scale(std::size_t n, const LocScaleParams& p, Rng& rng);

}  // namespace gabsn
