#pragma once

#include <stdexcept>
#include <string>

namespace dequant {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad indices, arity mismatches, unparsable tables.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A requested state would exceed the configured qubit ceiling.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// The black box does not hold the constant-or-balanced promise.
class PromiseViolation : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to reach its acceptance bound.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace dequant
