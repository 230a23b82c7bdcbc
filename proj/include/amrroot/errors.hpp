#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amrroot {

/// Invalid configuration or precondition violation (bad interval, bad tolerance).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The objective returned an infinity or NaN, or raised a DomainError.
class NonFiniteValue : public std::runtime_error {
 public:
  explicit NonFiniteValue(double x);
  double where() const noexcept { return x_; }

 private:
  double x_;
};

/// The evaluation budget of a solve has been spent.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t limit);
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// A ratio whose denominator is zero.
class DivisionDegenerate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by an objective that is undefined at the requested point
/// (ln of a nonpositive number, division by zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace amrroot
