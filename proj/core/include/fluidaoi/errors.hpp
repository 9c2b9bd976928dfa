#pragma once

#include <stdexcept>
#include <string>

namespace fluidaoi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters violate a ModelParams invariant, or an operation was asked for a
/// configuration it does not cover (e.g. mean AoI with a finite buffer).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// The stability condition required by a closed form does not hold.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

/// No negative zero of the characteristic polynomial yields a valid distribution.
class RootNotFound : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class EmptyFeasibleRegion : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace fluidaoi
