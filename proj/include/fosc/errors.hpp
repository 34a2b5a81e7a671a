#pragma once

#include <stdexcept>
#include <string>

namespace fosc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (E < 0, beta <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tabulated data queried outside its range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Some f(n) <= 0 where a strictly positive deformation is required.
class DegenerateDeformation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Truncated Fock space too small for the requested state.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Tomographic ray with mu = nu = 0.
class DegenerateRay : public Error {
 public:
  using Error::Error;
};

/// A thermal series that does not converge.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// Malformed input (state matrices, JSON documents).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace fosc
