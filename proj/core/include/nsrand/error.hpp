#pragma once

#include <stdexcept>
#include <string>

namespace nsrand {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid size, wrong space tag, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected during parsing or validation. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Checkpoint file could not be decoded.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

/// A time step produced non-finite values.
class StepFailure : public Error {
 public:
  StepFailure(double time, const std::string& message)
      : Error(message + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Numerical procedure did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsrand
