#pragma once

#include <stdexcept>
#include <string>

namespace circq {

// Parameter problems: bad input, inadmissible fiducial, out-of-range domain.
// The CLI maps these to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Raised when supp(eta) is not contained in (gamma - pi, gamma) mod 2 pi.
class AdmissibilityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Failures of the numerics themselves. Each carries the name of the
// operation that failed so the CLI can report it (exit status 3).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NegativeVarianceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace circq
