// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cogbf {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario, sweep, or CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An eigensolver or factorization did not converge, or a numeric
/// consistency check failed hard.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A matrix does not have the numerical rank an operation requires
/// (e.g. more streams requested than the effective channel supports).
class RankError : public Error {
 public:
  using Error::Error;
};

/// Zero-forcing needs at least as many spare transmit dimensions as
/// data streams; thrown when the null space is too small.
class InsufficientNullSpace : public Error {
 public:
  using Error::Error;
};

/// The interference cap is below the minimum achievable interference;
/// carries that minimum so callers can report it.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double min_achievable)
      : Error(what), xi_min(min_achievable) {}
  double xi_min;
};

/// An iterative search stopped without certifying its tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// The sampling oracle found no point satisfying the constraint
/// within its restart budget.
class OracleNoFeasiblePoint : public Error {
 public:
  using Error::Error;
};

/// File read/write or format failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cogbf
