#pragma once

#include <stdexcept>
#include <string>

namespace shiftlike {

/// Rejected input: malformed spec, nonpositive measure, incomparable tails, bad parameter.
/// `field()` names the offending input location when one is known.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A library invariant failed on valid input. Always a bug or a genuine finding.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& check) : std::logic_error(check) {}
};

/// An exact-mode operation was asked for something it cannot represent exactly
/// (non-integer p, or a norm of a sum of incommensurable radicals).
class InexactError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace shiftlike
