#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cclab/errors.hpp"

namespace cclab {

/// Runtime-dimension Euclidean point/vector. Dimensions in this project are
/// small (3..6), so plain std::vector arithmetic is fine.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist2(a, b)); }

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

/// alpha*x + y
inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i] + y[i];
  return r;
}

inline Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

inline Vec unit_vec(int n, int axis) {
  Vec r(static_cast<std::size_t>(n), 0.0);
  r[static_cast<std::size_t>(axis)] = 1.0;
  return r;
}

inline Vec normalized(const Vec& a) {
  const double m = norm(a);
  if (!(m > 0.0)) throw GeometryError("cannot normalize a zero vector");
  return scaled(a, 1.0 / m);
}

}  // namespace cclab
