#include "doctest.h"

#include "rankprover/engine.hpp"
#include "rankprover/parser.hpp"

#include "fixtures.hpp"

#include <string>
#include <vector>

using namespace rankprover;
using namespace rankprover::testing;

namespace {

struct Shape {
  const char* file;
  int dim;
  std::size_t points;
  std::size_t hyps;
  std::size_t concls;
};

const std::vector<Shape> kShapes = {
    {"plane_meet_line.stmt", 3, 9, 10, 1},
    {"line_in_plane_meet.stmt", 3, 9, 9, 2},
    {"desargues_space.stmt", 3, 10, 13, 1},
    {"desargues_plane.stmt", 3, 15, 32, 1},
    {"perspective_tetrahedra.stmt", 3, 15, 30, 1},
    {"hyperplanes_meet_3space.stmt", 5, 15, 18, 1},
    {"threespace_in_hyperplane_meet.stmt", 5, 15, 13, 2},
    {"planes_meet_point_4d.stmt", 4, 8, 7, 1},
    {"rank_chain_basic.stmt", 3, 4, 2, 2},
    {"triangle_transversal.stmt", 2, 6, 5, 1},
    {"triangle_coincident.stmt", 2, 6, 5, 1},
    {"inconsistent.stmt", 3, 3, 2, 1},
    {"distinct_points.stmt", 2, 2, 0, 1},
};

std::vector<ConclusionStatus> statuses(const Statement& stmt) {
  SaturationState st = init_state(stmt);
  saturate(st);
  std::vector<ConclusionStatus> out;
  for (const Verdict& v : decide(st, stmt)) out.push_back(v.status);
  return out;
}

} // namespace

TEST_CASE("every shipped statement parses with the declared shape") {
  for (const Shape& s : kShapes) {
    CAPTURE(s.file);
    ParsedStatement p = parse_statement(slurp(statement_path(s.file)));
    CHECK(p.dimension_declared);
    CHECK(p.statement.universe.dimension == s.dim);
    CHECK(p.statement.universe.size() == s.points);
    CHECK(p.statement.hypotheses.size() == s.hyps);
    CHECK(p.statement.conclusions.size() == s.concls);
  }
}

TEST_CASE("printing and reparsing is the identity on the shipped corpus") {
  for (const Shape& s : kShapes) {
    CAPTURE(s.file);
    Statement original = load_statement(s.file);
    Statement reparsed = parse_statement(print_statement(original)).statement;
    CHECK(reparsed == original);
  }
}

TEST_CASE("small statements decide as expected") {
  using S = ConclusionStatus;
  CHECK(statuses(load_statement("plane_meet_line.stmt")) == std::vector{S::Proved});
  CHECK(statuses(load_statement("line_in_plane_meet.stmt")) ==
        std::vector{S::Proved, S::Proved});
  CHECK(statuses(load_statement("desargues_space.stmt")) == std::vector{S::Proved});
  CHECK(statuses(load_statement("planes_meet_point_4d.stmt")) == std::vector{S::Proved});
  CHECK(statuses(load_statement("rank_chain_basic.stmt")) ==
        std::vector{S::Proved, S::Proved});
  CHECK(statuses(load_statement("triangle_transversal.stmt")) == std::vector{S::Proved});
  CHECK(statuses(load_statement("triangle_coincident.stmt")) == std::vector{S::Proved});
  CHECK(statuses(load_statement("inconsistent.stmt")) ==
        std::vector{S::ContradictoryHypotheses});
  CHECK(statuses(load_statement("distinct_points.stmt")) == std::vector{S::Unknown});
}

TEST_CASE("the triangle case pair differs only in the case hypothesis") {
  Statement transversal = load_statement("triangle_transversal.stmt");
  Statement coincident = load_statement("triangle_coincident.stmt");
  CHECK(transversal.universe == coincident.universe);
  CHECK(transversal.conclusions == coincident.conclusions);
  REQUIRE(transversal.hypotheses.size() == coincident.hypotheses.size());
  for (std::size_t i = 0; i + 1 < transversal.hypotheses.size(); ++i) {
    CHECK(transversal.hypotheses[i] == coincident.hypotheses[i]);
  }
  const RankConstraint& a = transversal.hypotheses.back();
  const RankConstraint& b = coincident.hypotheses.back();
  CHECK(a.set == b.set);
  CHECK(a.relation == Relation::Eq);
  CHECK(b.relation == Relation::Eq);
  CHECK(a.value == 2);
  CHECK(b.value == 1);
}

TEST_CASE("the hyperplane statements share their fifteen points") {
  Statement big = load_statement("hyperplanes_meet_3space.stmt");
  Statement small = load_statement("threespace_in_hyperplane_meet.stmt");
  CHECK(big.universe == small.universe);
  CHECK(big.universe.rank_cap() == 6);
}
