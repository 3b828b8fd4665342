#include "doctest.h"

#include "rankprover/core.hpp"
#include "rankprover/parser.hpp"

#include <string>

using namespace rankprover;

TEST_CASE("minimal statement: points and one conclusion") {
  ParsedStatement p = parse_statement("points A conclusion A : 1");
  CHECK(!p.dimension_declared);
  CHECK(p.statement.universe.dimension == kDefaultDimension);
  REQUIRE(p.statement.universe.names.size() == 1);
  CHECK(p.statement.universe.names[0] == "A");
  CHECK(p.statement.hypotheses.empty());
  REQUIRE(p.statement.conclusions.size() == 1);
  CHECK(p.statement.conclusions[0] == RankConstraint{PointSet{1u}, Relation::Eq, 1});
}

TEST_CASE("full statement with sections, comments, and primes") {
  const char* text =
      "# leading comment\n"
      "dimension 4\n"
      "points A B' C'' M   # trailing comment\n"
      "hypotheses\n"
      "  A B' C'' : 3\n"
      "  A M <= 2\n"
      "conclusion\n"
      "  B' M >= 1\n";
  ParsedStatement p = parse_statement(text);
  CHECK(p.dimension_declared);
  CHECK(p.statement.universe.dimension == 4);
  REQUIRE(p.statement.universe.names.size() == 4);
  CHECK(p.statement.universe.names[1] == "B'");
  CHECK(p.statement.universe.names[2] == "C''");
  REQUIRE(p.statement.hypotheses.size() == 2);
  CHECK(p.statement.hypotheses[0] == RankConstraint{PointSet{0b0111u}, Relation::Eq, 3});
  CHECK(p.statement.hypotheses[1] == RankConstraint{PointSet{0b1001u}, Relation::Le, 2});
  REQUIRE(p.statement.conclusions.size() == 1);
  CHECK(p.statement.conclusions[0] == RankConstraint{PointSet{0b1010u}, Relation::Ge, 1});
}

TEST_CASE("declared dimension wins over the caller fallback") {
  ParsedStatement with_decl = parse_statement("dimension 5 points A conclusion A : 1", 2);
  CHECK(with_decl.statement.universe.dimension == 5);
  CHECK(with_decl.dimension_declared);

  ParsedStatement without = parse_statement("points A conclusion A : 1", 2);
  CHECK(without.statement.universe.dimension == 2);
  CHECK(!without.dimension_declared);
}

TEST_CASE("parse errors carry the offending line number") {
  auto line_of = [](const char* text) {
    try {
      parse_statement(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };

  CHECK(line_of("points A\nconclusion\n  A : 9\n") == 3);       // value above d+1
  CHECK(line_of("points A A\nconclusion A : 1\n") == 1);        // duplicate point
  CHECK(line_of("points A\nhypotheses\n  A B : 2\nconclusion A : 1\n") == 3); // unknown point
  CHECK(line_of("points A B\nconclusion\n  A A : 2\n") == 3);   // repeated point in a set
  CHECK(line_of("points A B\nconclusion\n  A B < 2\n") == 3);   // lone '<'
  CHECK(line_of("points A B\nconclusion\n  A B :\n") == 3);     // missing value
  CHECK(line_of("dimension 99 points A conclusion A : 1") == 1); // dimension out of range
  CHECK_THROWS_AS(parse_statement("points\nconclusion A : 1"), ParseError); // empty point list
}

TEST_CASE("section keywords terminate sections instead of naming points") {
  // A keyword right after 'points' leaves the point list empty.
  CHECK_THROWS_AS(parse_statement("points conclusion conclusion conclusion : 1"), ParseError);
  // A keyword inside a constraint's point list is rejected outright.
  CHECK_THROWS_AS(parse_statement("points A B conclusion A dimension : 2"), ParseError);
  // An empty hypotheses section is legal: the keyword hands over to 'conclusion'.
  Statement s = parse_statement("points A hypotheses conclusion A : 1").statement;
  CHECK(s.hypotheses.empty());
  CHECK(s.conclusions.size() == 1);
}

TEST_CASE("statements need at least one conclusion") {
  CHECK_THROWS_AS(parse_statement("points A B hypotheses A B : 2"), ParseError);
  CHECK_THROWS_AS(parse_statement("points A B"), ParseError);
}

TEST_CASE("oversized numbers and point counts are refused") {
  CHECK_THROWS_AS(parse_statement("points A conclusion A : 1234567"), ParseError);

  std::string many = "dimension 3 points";
  for (int i = 0; i < 26; ++i) many += " P" + std::to_string(i);
  many += " conclusion P0 : 1";
  CHECK_THROWS_AS(parse_statement(many), ParseError);

  // A tighter caller-supplied cap bites earlier.
  CHECK_THROWS_AS(parse_statement("points A B C conclusion A : 1", kDefaultDimension, 2),
                  ParseError);
}

TEST_CASE("zero-value constraints parse and immediately contradict rank >= 1") {
  // rk >= 0 of a nonempty set is vacuous but legal; rk = 0 contradicts later.
  ParsedStatement p = parse_statement("points A B conclusion A B >= 0");
  CHECK(p.statement.conclusions[0].value == 0);
}

TEST_CASE("canonical print round-trips through the parser") {
  const char* text =
      "dimension 3\n"
      "points A B C M N P\n"
      "hypotheses\n"
      "  A B C : 3\n"
      "  M N <= 2   # comment vanishes in canonical form\n"
      "conclusion\n"
      "  M N P >= 2\n";
  ParsedStatement p = parse_statement(text);
  const std::string canon = print_statement(p.statement);
  ParsedStatement again = parse_statement(canon);
  CHECK(again.statement == p.statement);
  CHECK(print_statement(again.statement) == canon);

  // Canonical text always declares the dimension and keeps universe order.
  CHECK(canon.find("dimension 3\n") == 0);
  CHECK(canon.find("points A B C M N P\n") != std::string::npos);
}

TEST_CASE("print_constraint renders members in universe order") {
  ParsedStatement p = parse_statement("points A B C conclusion C A : 2");
  // The set {C, A} prints as "A C" regardless of source order.
  CHECK(print_constraint(p.statement.universe, p.statement.conclusions[0]) == "A C : 2");
}

TEST_CASE("unreadable files raise a filesystem error, not a parse error") {
  CHECK_THROWS_AS(parse_statement_file("/nonexistent/path.stmt"), std::runtime_error);
}
