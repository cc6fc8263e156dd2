#pragma once

#include <stdexcept>
#include <string>

namespace cpo {

/// Base of every error raised by the library. Catch this at the tool boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input, violated guard or malformed configuration document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared while integrating or propagating.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A denominator or linear system is singular to working precision.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// The spectrum has no interior local minimum to measure.
class NoDipError : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside the regime the propagation model assumes.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A beam is too narrow for the transverse grid.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Field reached the periodic boundary of the transverse domain.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// Moments of a field that carries no power.
class UndefinedCentroidError : public Error {
 public:
  using Error::Error;
};

/// A Gaussian packet lost normalizability.
class EvolutionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpo
