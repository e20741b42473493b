#pragma once

#include <stdexcept>
#include <string>

namespace ajsf {

/// Input outside an operation's domain (bad digit bounds, negative scalar
/// with a non-negative digit set, overlapping coordinate sets, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured work budget (state count, enumeration size, memo size) would
/// be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric procedure (root finding, power iteration) did not meet its
/// tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ajsf
