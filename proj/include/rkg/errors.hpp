#pragma once

#include <stdexcept>
#include <string>

namespace rkg {

/// Precondition violated by caller-supplied parameters (K > P, n < 3, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration was refused because it exceeds the configured cap.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(const std::string& what, std::string assignments)
      : std::runtime_error(what), assignments_(std::move(assignments)) {}

  /// Decimal rendering of C(P,K)^n that triggered the refusal.
  const std::string& assignments() const noexcept { return assignments_; }

 private:
  std::string assignments_;
};

/// Two independent routes to the same exact quantity disagreed. Always a defect.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rkg
