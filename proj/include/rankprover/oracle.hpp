// Finite projective-space models PG(d, q) for q in {2, 3}: exact rank oracle,
// assignment checking, countermodel search, and satisfying-assignment sampling.
//
// A model point is a normalized homogeneous coordinate vector (first nonzero
// coordinate scaled to 1). Ranks are matrix ranks over GF(q), so monotonicity
// and submodularity hold exactly; that makes the model a sound reference for
// the engine's interval bounds. A NotFound search result is evidence, not
// proof: rank statements can hold over every prime field yet fail in a general
// incidence space.
#pragma once

#include "rankprover/core.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace rankprover {

inline constexpr int kMaxModelCoords = 8; // supports PG(d, q) up to d = 7

struct ProjectiveModel {
  int q = 2;   // field size, 2 or 3
  int dim = 3; // projective dimension d

  // Normalized homogeneous coordinates, one entry per point, index-stable.
  std::vector<std::array<std::uint8_t, kMaxModelCoords>> points;
  // q == 2 only: coordinate bitmasks (bit c = coordinate c), same indexing.
  std::vector<std::uint32_t> masks;

  int coord_count() const { return dim + 1; }
  std::size_t size() const { return points.size(); }
};

// Builds PG(dim, q) with (q^(d+1) - 1) / (q - 1) points. q must be 2 or 3 and
// dim within [1, kMaxModelCoords - 1]; throws std::invalid_argument otherwise.
ProjectiveModel make_model(int q, int dim);

// Rank over GF(q) of the coordinate matrix of the chosen points (duplicates
// harmless); 0 for an empty selection.
int model_rank(const ProjectiveModel& m, const std::vector<int>& point_indices);

// Maps each universe point (by index) to a model point index. Need not be
// injective: the statement language has no implicit distinctness.
using Assignment = std::vector<int>;

// Rank of the model points assigned to a subset of the universe.
int assigned_rank(const ProjectiveModel& m, const Assignment& asg, PointSet s);

bool constraint_holds(const ProjectiveModel& m, const Assignment& asg, const RankConstraint& c);

// Index of the first violated hypothesis, or nullopt when all hold.
std::optional<std::size_t> first_violated_hypothesis(const ProjectiveModel& m,
                                                     const Statement& stmt,
                                                     const Assignment& asg);

struct CountermodelResult {
  bool found = false;
  Assignment assignment;       // satisfies all hypotheses, violates a conclusion
  std::size_t violated_conclusion = 0;
  std::uint64_t nodes = 0;     // search tree nodes visited
  bool exhausted = false;      // entire space covered within budget
};

// Depth-first search for an assignment that satisfies every hypothesis and
// violates at least one conclusion. Points are assigned in first-appearance
// order (hypotheses, then conclusions, then the rest) so constraints complete
// early and prune hard. Universes of at most 5 points are scanned in the
// model's natural value order (exhaustive up to the node budget); larger ones
// use a seed-shuffled value order per point. Found results are re-verified.
CountermodelResult search_countermodel(const Statement& stmt, const ProjectiveModel& model,
                                       std::uint64_t budget, std::uint64_t seed);

// Collects up to `want` assignments satisfying all hypotheses (conclusions
// ignored), same search order as above. Returns when the count is reached, the
// space is exhausted, or the node budget runs out.
std::vector<Assignment> sample_satisfying(const Statement& stmt, const ProjectiveModel& model,
                                          std::size_t want, std::uint64_t budget,
                                          std::uint64_t seed);

// Applies a uniformly random invertible linear map over GF(q) to every model
// point of `base`, producing an assignment with identical subset ranks. Useful
// for fanning one known satisfying assignment into many.
Assignment random_linear_image(const ProjectiveModel& m, const Assignment& base,
                               std::uint64_t seed);

} // namespace rankprover
