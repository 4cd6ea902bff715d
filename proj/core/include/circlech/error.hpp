#pragma once

#include <stdexcept>
#include <string>

namespace circlech {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (order mismatch, index or
/// time out of range, malformed input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The input is well-formed but the requested quantity does not exist,
/// e.g. the logarithm of a series with vanishing constant term.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration failed; carries the time at which it happened.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace circlech
