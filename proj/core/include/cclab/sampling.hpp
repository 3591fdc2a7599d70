#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cclab/dimension.hpp"
#include "cclab/vec.hpp"

namespace cclab {

/// SplitMix64 scramble; used to derive independent per-item streams from one
/// user seed so that parallel work is schedule-independent.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic RNG. Uniform and normal variates are generated from raw
/// mt19937_64 output with fixed arithmetic (no std::*_distribution, whose
/// output is implementation-defined), so sequences are reproducible across
/// platforms and thread counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (pair cached).
  double normal();

 private:
  std::mt19937_64 eng_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Uniform direction on the unit sphere S^{n-1}.
Vec random_unit_vector(Rng& rng, int n);

/// Uniform point in the open unit ball (rejection sampling; fine for n <= 8).
Vec random_in_unit_ball(Rng& rng, int n);

/// Golden-angle spiral points on S^2 (deterministic, low discrepancy).
std::vector<Vec> fibonacci_sphere(int count);

/// Boundary directions for an (n-1)-sphere: Fibonacci spiral for n = 3,
/// seeded uniform directions otherwise.
std::vector<Vec> sphere_directions(Dimension n, int count, std::uint64_t seed);

}  // namespace cclab
