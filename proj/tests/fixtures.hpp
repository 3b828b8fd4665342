// Hand-checked projective-model assignments for the shipped statements, plus
// small helpers for turning them into oracle assignments. Every fixture is
// validated inside the tests (all hypotheses hold, conclusions behave as
// claimed), so a typo here fails loudly instead of weakening a test.
#pragma once

#include "rankprover/core.hpp"
#include "rankprover/oracle.hpp"
#include "rankprover/parser.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankprover::testing {

inline std::string statements_dir() {
#ifdef RANKPROVER_STATEMENTS_DIR
  return RANKPROVER_STATEMENTS_DIR;
#else
  return "statements";
#endif
}

inline std::string statement_path(const std::string& file) {
  return statements_dir() + "/" + file;
}

inline Statement load_statement(const std::string& file) {
  return parse_statement_file(statement_path(file)).statement;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Point coordinates, normalized the way the model stores them (first nonzero
// coordinate equal to 1).
using Coords = std::vector<int>;
using FixtureMap = std::vector<std::pair<std::string, Coords>>;

inline int model_index_of(const ProjectiveModel& m, const Coords& c) {
  if (static_cast<int>(c.size()) != m.coord_count())
    throw std::invalid_argument("fixture coordinate arity mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool same = true;
    for (int k = 0; k < m.coord_count(); ++k) {
      if (m.points[i][static_cast<std::size_t>(k)] != c[static_cast<std::size_t>(k)]) {
        same = false;
        break;
      }
    }
    if (same) return static_cast<int>(i);
  }
  throw std::invalid_argument("fixture coordinates name no model point");
}

inline Assignment fixture_assignment(const Statement& stmt, const ProjectiveModel& m,
                                     const FixtureMap& fix) {
  Assignment asg(stmt.universe.size(), -1);
  for (std::size_t i = 0; i < stmt.universe.size(); ++i) {
    const std::string& name = stmt.universe.names[i];
    bool found = false;
    for (const auto& [n, coords] : fix) {
      if (n == name) {
        asg[i] = model_index_of(m, coords);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("fixture misses point " + name);
  }
  return asg;
}

// PG(3,2), Table-4 configuration: planes x0 = 0 and x1 = 0 meet in the line
// spanned by e2, e3; M, N, P are the three points of that line.
inline FixtureMap table4_fixture() {
  return {
      {"A", {0, 1, 0, 0}},  {"B", {0, 0, 1, 0}},  {"C", {0, 0, 0, 1}},
      {"A'", {1, 0, 0, 0}}, {"B'", {1, 0, 1, 0}}, {"C'", {1, 0, 0, 1}},
      {"M", {0, 0, 1, 0}},  {"N", {0, 0, 0, 1}},  {"P", {0, 0, 1, 1}},
  };
}

// PG(3,2), two triangles in distinct planes, in perspective from O = e0.
inline FixtureMap desargues_space_fixture() {
  return {
      {"A", {0, 1, 0, 0}},     {"B", {0, 0, 1, 0}},    {"C", {0, 0, 0, 1}},
      {"A'", {1, 1, 0, 0}},    {"B'", {1, 0, 1, 0}},   {"C'", {1, 0, 0, 1}},
      {"O", {1, 0, 0, 0}},     {"gamma", {0, 1, 1, 0}}, {"beta", {0, 1, 0, 1}},
      {"alpha", {0, 0, 1, 1}},
  };
}

// PG(3,3), coplanar Desargues configuration lifted through P and Q. The
// statement has no GF(2) realization (its hypotheses force a contradiction
// there), so the oracle bridge for it runs over GF(3).
inline FixtureMap desargues_plane_fixture() {
  return {
      {"A", {0, 1, 0, 0}},  {"B", {0, 0, 1, 0}},     {"C", {0, 0, 0, 1}},
      {"O", {0, 1, 1, 1}},  {"A'", {0, 1, 2, 2}},    {"B'", {0, 1, 2, 1}},
      {"C'", {0, 1, 1, 2}}, {"gamma", {0, 1, 2, 0}}, {"beta", {0, 1, 0, 2}},
      {"alpha", {0, 0, 1, 2}}, {"P", {1, 0, 0, 0}},  {"Q", {1, 1, 1, 1}},
      {"A1", {1, 2, 0, 0}}, {"B1", {1, 0, 2, 0}},    {"C1", {1, 0, 0, 2}},
  };
}

// PG(3,2), two tetrahedra in perspective from O = (1,1,1,1); each edge point
// pXY = X + Y, which also equals X' + Y'. The six edge points span the
// even-weight subspace, a plane.
inline FixtureMap tetrahedra_fixture() {
  return {
      {"A", {1, 0, 0, 0}},   {"B", {0, 1, 0, 0}},   {"C", {0, 0, 1, 0}},
      {"D", {0, 0, 0, 1}},   {"O", {1, 1, 1, 1}},   {"A'", {0, 1, 1, 1}},
      {"B'", {1, 0, 1, 1}},  {"C'", {1, 1, 0, 1}},  {"D'", {1, 1, 1, 0}},
      {"pAB", {1, 1, 0, 0}}, {"pAC", {1, 0, 1, 0}}, {"pAD", {1, 0, 0, 1}},
      {"pBC", {0, 1, 1, 0}}, {"pBD", {0, 1, 0, 1}}, {"pCD", {0, 0, 1, 1}},
  };
}

// PG(5,2), hyperplanes x0 = 0 and x1 = 0; their common 3-space is spanned by
// e2..e5, where I, J, K, L, M live.
inline FixtureMap table56_fixture() {
  return {
      {"A", {0, 1, 0, 0, 0, 0}},  {"B", {0, 0, 1, 0, 0, 0}},  {"C", {0, 0, 0, 1, 0, 0}},
      {"D", {0, 0, 0, 0, 1, 0}},  {"E", {0, 0, 0, 0, 0, 1}},  {"Ap", {1, 0, 0, 0, 0, 0}},
      {"Bp", {0, 0, 1, 0, 0, 0}}, {"Cp", {0, 0, 0, 1, 0, 0}}, {"Dp", {0, 0, 0, 0, 1, 0}},
      {"Ep", {0, 0, 0, 0, 0, 1}}, {"I", {0, 0, 1, 0, 0, 0}},  {"J", {0, 0, 0, 1, 0, 0}},
      {"K", {0, 0, 0, 0, 1, 0}},  {"L", {0, 0, 0, 0, 0, 1}},  {"M", {0, 0, 1, 1, 1, 1}},
  };
}

// PG(4,2), planes ABC and A'B'C' spanning the whole space share exactly the
// point e2, so M and P coincide there.
inline FixtureMap planes_4d_fixture() {
  return {
      {"A", {1, 0, 0, 0, 0}},  {"B", {0, 1, 0, 0, 0}},  {"C", {0, 0, 1, 0, 0}},
      {"A'", {0, 0, 0, 1, 0}}, {"B'", {0, 0, 0, 0, 1}}, {"C'", {0, 0, 1, 1, 1}},
      {"M", {0, 0, 1, 0, 0}},  {"P", {0, 0, 1, 0, 0}},
  };
}

// PG(2,2), triangle with the three edge points; M = A + B and so on.
inline FixtureMap triangle_fixture() {
  return {
      {"A", {1, 0, 0}}, {"B", {0, 1, 0}}, {"C", {0, 0, 1}},
      {"M", {1, 1, 0}}, {"N", {1, 0, 1}}, {"Q", {0, 1, 1}},
  };
}

// Same triangle with M collapsed onto A (the companion case file).
inline FixtureMap triangle_coincident_fixture() {
  return {
      {"A", {1, 0, 0}}, {"B", {0, 1, 0}}, {"C", {0, 0, 1}},
      {"M", {1, 0, 0}}, {"N", {1, 0, 1}}, {"Q", {0, 1, 1}},
  };
}

inline FixtureMap rank_chain_fixture() {
  return {
      {"A", {0, 1, 0, 0}}, {"B", {0, 0, 1, 0}}, {"C", {0, 0, 0, 1}}, {"M", {0, 1, 1, 0}},
  };
}

inline FixtureMap distinct_points_fixture() {
  return {{"A", {1, 0, 0}}, {"B", {0, 1, 0}}};
}

struct StatementFixture {
  const char* file; // statement file name under statements/
  int q;            // field for the satisfying model
  FixtureMap (*fixture)();
};

// Every shipped satisfiable statement with a satisfying assignment. The
// inconsistent example has none by construction.
inline std::vector<StatementFixture> all_fixtures() {
  return {
      {"plane_meet_line.stmt", 2, table4_fixture},
      {"line_in_plane_meet.stmt", 2, table4_fixture},
      {"desargues_space.stmt", 2, desargues_space_fixture},
      {"desargues_plane.stmt", 3, desargues_plane_fixture},
      {"perspective_tetrahedra.stmt", 2, tetrahedra_fixture},
      {"hyperplanes_meet_3space.stmt", 2, table56_fixture},
      {"threespace_in_hyperplane_meet.stmt", 2, table56_fixture},
      {"planes_meet_point_4d.stmt", 2, planes_4d_fixture},
      {"triangle_transversal.stmt", 2, triangle_fixture},
      {"triangle_coincident.stmt", 2, triangle_coincident_fixture},
      {"rank_chain_basic.stmt", 2, rank_chain_fixture},
      {"distinct_points.stmt", 2, distinct_points_fixture},
  };
}

// The six core statements the acceptance gate exercises end to end.
inline std::vector<const char*> shipped_corpus() {
  return {
      "plane_meet_line.stmt",
      "line_in_plane_meet.stmt",
      "desargues_space.stmt",
      "desargues_plane.stmt",
      "hyperplanes_meet_3space.stmt",
      "threespace_in_hyperplane_meet.stmt",
  };
}

} // namespace rankprover::testing
