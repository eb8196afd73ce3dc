#pragma once

#include <stdexcept>
#include <string>

namespace camel {

/// Precondition or input validation failure (bad lengths, ranges, non-finite data).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solve (implicit stage, Picard iteration) did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trajectory left the divergence guard or produced non-finite values.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked mathematical property failed (bound breached, displacement violated, ...).
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace camel
