#pragma once

#include <stdexcept>
#include <string>

namespace rnstab {

// Argument outside the mathematical domain of an operation (t-norm input
// outside [0,1], non-positive scaling factor, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller misuse: dimension mismatch, empty grid, off-lattice point.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for the three ways coefficients can fall outside the region where the
// stability construction applies.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateEquation : public ValidityError {
 public:
  using ValidityError::ValidityError;
};

class NonrealOrRepeatedRoots : public ValidityError {
 public:
  using ValidityError::ValidityError;
};

class OutsideValidityRegion : public ValidityError {
 public:
  using ValidityError::ValidityError;
};

class TruncationFailure : public std::runtime_error {
 public:
  TruncationFailure(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : std::runtime_error(what), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace rnstab
