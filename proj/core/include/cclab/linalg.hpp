#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cclab/errors.hpp"
#include "cclab/vec.hpp"

namespace cclab {

/// Solve A x = b for a small dense m x m system (row-major A), Gaussian
/// elimination with partial pivoting. The systems here are (n+1) x (n+1)
/// normal equations, so no factorization library is warranted.
inline Vec solve_dense(std::vector<double> a, Vec b, std::size_t m) {
  double max_pivot = 0.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    double best = std::fabs(a[col * m + col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double v = std::fabs(a[r * m + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    max_pivot = std::max(max_pivot, best);
    if (!(best > 0.0) || best < 1e-14 * max_pivot) {
      throw ConditioningError("linear system is singular or too ill-conditioned");
    }
    if (piv != col) {
      for (std::size_t c = col; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    const double inv = 1.0 / a[col * m + col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r * m + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
      b[r] -= f * b[col];
    }
  }
  Vec x(m, 0.0);
  for (std::size_t ri = m; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < m; ++c) s -= a[ri * m + c] * x[c];
    x[ri] = s / a[ri * m + ri];
  }
  return x;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least-squares line through (x_i, y_i).
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) throw ConditioningError("line fit needs at least two points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 1e-16 * static_cast<double>(n))) {
    throw ConditioningError("line fit abscissae are too close together");
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace cclab
