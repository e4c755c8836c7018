#pragma once

#include <stdexcept>
#include <string>

namespace pro2 {

/// Operands were built at different levels k.
class ContextMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An operation needs an exhaustive enumeration larger than the configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition (normality, parameter range) does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// log2 |G : S_i| is zero, so the ratio at that level is 0/0.
class UndefinedRatio : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace pro2
