#pragma once

#include <stdexcept>
#include <string>

namespace scwig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments with incompatible shapes (phase-space dimension, list lengths).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested energy shell does not exist or is not a closed curve.
class ShellError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: drift cap exceeded, no convergence, leakage.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the given inputs (e.g. time integration of
/// non-hermitian channels).
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Invalid or unresolvable configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace scwig
