#pragma once

#include <stdexcept>
#include <string>

#include "wcl/chaos.hpp"
#include "wcl/direction.hpp"

namespace wcl {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Grammar:
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' posint)? | '(' expr ')' ('^' posint)? | rational
///   atom   := xi<digits> | H(<digits>,<digits>)
/// Whitespace is insignificant; exponents are capped at 64.
ChaosElement parse_expression(const std::string& text);

/// Direction syntax: "c1*e1 + c2*e2", coefficients optional rationals.
Direction parse_direction(const std::string& text);

/// Canonical text forms; parse_expression(format_element(f)) == f and
/// likewise for directions.
std::string format_element(const ChaosElement& f);
std::string format_direction(const Direction& d);

}  // namespace wcl
