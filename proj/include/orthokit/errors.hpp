#pragma once

#include <stdexcept>
#include <string>

namespace orthokit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to reach its tolerance within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace orthokit
