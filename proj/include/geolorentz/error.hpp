#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace geolorentz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a precondition (bad axis, negative step, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A frame or particle velocity with |v| >= 1.
class Superluminal : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Matrix does not have the boost/rotation generator layout.
class NotLieElement : public Error {
 public:
  using Error::Error;
};

/// mat_exp argument too large for the accuracy contract.
class NormOverflow : public Error {
 public:
  using Error::Error;
};

/// Field evaluation at a singular point (e.g. on top of a point source).
class FieldSingularity : public Error {
 public:
  using Error::Error;
};

class Underdetermined : public Error {
 public:
  using Error::Error;
};

/// A result that the algebra guarantees but which failed to hold.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

/// Stepper failure inside simulate(); carries the index of the failing step.
class SimulationError : public Error {
 public:
  SimulationError(std::int64_t step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

}  // namespace geolorentz
