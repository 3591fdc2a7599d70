#pragma once

#include <string>

#include "cclab/errors.hpp"

namespace cclab {

/// Ambient dimension n >= 3. All conformal exponents are derived from it.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3) {
      throw ValidationError("n must be >= 3 (got " + std::to_string(n) + ")");
    }
  }

  int value() const noexcept { return n_; }
  double d() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(Dimension a, Dimension b) noexcept { return a.n_ == b.n_; }
  friend bool operator!=(Dimension a, Dimension b) noexcept { return a.n_ != b.n_; }

 private:
  int n_;
};

}  // namespace cclab
