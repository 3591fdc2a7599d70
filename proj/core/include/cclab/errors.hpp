#pragma once

#include <stdexcept>
#include <string>

namespace cclab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input parameters (dimension < 3, nonpositive radius, epsilon out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested outside a function's domain (inside an exclusion zone,
/// negative base of a fractional power, profile range exceeded, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent geometric input (point not on the stated sphere, degenerate
/// configuration, half-space boundary through an inversion center, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: orbit escape, insufficient trajectory span, non-convergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A least-squares or linear solve was too ill-conditioned to trust.
class ConditioningError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The moving-planes scan found no starting height with a positive reflection field.
class NoStartError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A construction violates the hypotheses it is required to satisfy.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace cclab
