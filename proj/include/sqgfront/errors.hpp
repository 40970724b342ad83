#pragma once

#include <stdexcept>
#include <string>

namespace sqgfront {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation produced non-finite values or left its stability region.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqgfront
