#pragma once

#include <stdexcept>
#include <string>

namespace chernform {

/// Base class for every error thrown by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed scenario text, violated invariants, mismatched shapes.
/// The CLI maps these to exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

/// Text that does not parse. Carries a 1-based line/column position.
struct ParseError : ValidationError {
  ParseError(const std::string& msg, int line_, int column_)
      : ValidationError(msg + " (line " + std::to_string(line_) + ", column " +
                        std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

/// Operands whose shapes cannot be combined (rank or degree mismatch).
struct DimensionError : ValidationError {
  using ValidationError::ValidationError;
};

/// Missing or inconsistent configuration (empty sample lists, absent sections).
struct ConfigError : ValidationError {
  using ValidationError::ValidationError;
};

/// A computation failed at a point. The CLI maps these to exit code 2.
struct NumericError : Error {
  using Error::Error;
};

/// Expression evaluation fault (division by zero, log of a nonpositive real).
struct EvalFault : NumericError {
  using NumericError::NumericError;
};

/// A finite-difference stencil left a non-periodic patch.
struct StencilError : NumericError {
  using NumericError::NumericError;
};

/// Metric matrix too close to singular for a reliable inverse.
struct IllConditionedError : NumericError {
  using NumericError::NumericError;
};

}  // namespace chernform
