#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "phasegeom/chart.hpp"
#include "phasegeom/expr.hpp"

namespace phasegeom {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        message_(message),
        position_(position) {}
  const std::string& message() const { return message_; }
  /// 0-based character offset into the source string.
  size_t position() const { return position_; }

 private:
  std::string message_;
  size_t position_;
};

/// Parses `source` into an Expr over the chart's coordinates and t.
///
/// Grammar: identifiers [a-zA-Z_][a-zA-Z0-9_]*, integer/decimal literals
/// (rationals arrive as integer divisions and fold exactly), operators
/// + - * / ^ with standard precedence, functions exp/ln/sin/cos, and
/// parentheses. Whitespace-insensitive. Throws ParseError with position
/// on syntax errors and unknown identifiers.
Expr parse_expr(std::string_view source, const Chart& chart);

}  // namespace phasegeom
