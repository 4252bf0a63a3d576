#pragma once

#include <stdexcept>
#include <string>

namespace wulff {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (r <= 0, non-finite input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inadmissible configuration (non-convex norm, bad well parameters, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Mass bound outside (-|Omega|, |Omega|).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or iteration that did not reach its tolerance.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// A recovery-sequence support or inclusion condition fails for the requested epsilon.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A solve produced a state the downstream analysis cannot use (no sign change, ...).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace wulff
