// Statement-file parser and canonical printer.
//
// Format (token-oriented, "#" starts a comment running to end of line):
//
//   dimension 3            optional; falls back to the caller-supplied default
//   points A B C M
//   hypotheses
//     A B C : 3            rk{A,B,C} = 3
//     A B M <= 2           rk{A,B,M} <= 2
//   conclusion
//     A B >= 2
//
// Point names match [A-Za-z][A-Za-z0-9]*'* (trailing primes allowed); the
// section keywords are reserved. Every statement needs at least one conclusion.
#pragma once

#include "rankprover/core.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankprover {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ParsedStatement {
  Statement statement;
  bool dimension_declared = false; // true when the file carried a dimension line
};

// Parses and validates. Throws ParseError on syntax/shape problems.
ParsedStatement parse_statement(std::string_view text,
                                int fallback_dimension = kDefaultDimension,
                                int max_points = kDefaultMaxPoints);

// Reads the file and parses it. Throws std::runtime_error when unreadable.
ParsedStatement parse_statement_file(const std::string& path,
                                     int fallback_dimension = kDefaultDimension,
                                     int max_points = kDefaultMaxPoints);

// Canonical rendering: dimension line always present, one constraint per line,
// set members in universe order. parse(print(s)) reproduces s exactly; the
// certificate header fingerprints this text.
std::string print_statement(const Statement& stmt);

std::string print_constraint(const PointUniverse& u, const RankConstraint& c);

} // namespace rankprover
