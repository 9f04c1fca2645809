#pragma once

#include <stdexcept>
#include <string>

namespace bethe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments outside an operation's domain (out-of-window beta
/// index, rapidity at a pole of the change of variables, invalid spin).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Hilbert space dimension exceeds the configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Coinciding momenta/rapidities, zero momentum, or a vanishing Bethe vector.
class DegenerateRootsError : public Error {
 public:
  using Error::Error;
};

/// Denominator of the scattering matrix vanishes.
class SingularPairError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace bethe
