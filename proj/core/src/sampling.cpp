#include "cclab/sampling.hpp"

#include <cmath>

namespace cclab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x12345ull));
}

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  // Box-Muller; u1 bounded away from zero so log is finite.
  double u1 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

Vec random_unit_vector(Rng& rng, int n) {
  while (true) {
    Vec v(static_cast<std::size_t>(n));
    for (auto& c : v) c = rng.normal();
    const double m = norm(v);
    if (m > 1e-12) return scaled(v, 1.0 / m);
  }
}

Vec random_in_unit_ball(Rng& rng, int n) {
  while (true) {
    Vec v(static_cast<std::size_t>(n));
    for (auto& c : v) c = rng.uniform(-1.0, 1.0);
    if (norm2(v) < 1.0) return v;
  }
}

std::vector<Vec> fibonacci_sphere(int count) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    pts.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
  }
  return pts;
}

std::vector<Vec> sphere_directions(Dimension n, int count, std::uint64_t seed) {
  if (n.value() == 3) return fibonacci_sphere(count);
  Rng rng(seed);
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(random_unit_vector(rng, n.value()));
  return pts;
}

}  // namespace cclab
