#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gabsn {

/// Seeded generator with platform-independent variates.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniforms and normals are derived here rather than through
/// <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Independent child stream for parallel work item `index`.
  [[nodiscard]] Rng split(std::uint64_t index) const {
    // splitmix64 finalizer over (seed, index)
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace gabsn
