// Core data model: point universes, subset bitmasks, rank intervals and the
// saturation state (interval table plus derivation trace).
#pragma once

#include <cstdint>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rankprover {

// Hard limits. Universes are bitmask-indexed, so the table has 2^n entries.
inline constexpr int kMaxPointsLimit = 25;   // absolute ceiling (word-indexed table)
inline constexpr int kDefaultMaxPoints = 25; // default cap, overridable
inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 64;     // keeps all rank arithmetic in int8 range
inline constexpr int kDefaultDimension = 3;

// A subset of universe points, one bit per point index.
struct PointSet {
  std::uint32_t bits = 0;

  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint32_t b) : bits(b) {}

  static constexpr PointSet empty() { return PointSet{0}; }
  static constexpr PointSet single(std::size_t i) { return PointSet{std::uint32_t{1} << i}; }

  constexpr bool contains(std::size_t i) const { return (bits >> i) & 1u; }
  constexpr bool is_empty() const { return bits == 0; }
  constexpr int count() const { return std::popcount(bits); }
  constexpr bool subset_of(PointSet o) const { return (bits & o.bits) == bits; }

  constexpr PointSet operator|(PointSet o) const { return PointSet{bits | o.bits}; }
  constexpr PointSet operator&(PointSet o) const { return PointSet{bits & o.bits}; }
  constexpr PointSet operator-(PointSet o) const { return PointSet{bits & ~o.bits}; }
  constexpr bool operator==(const PointSet&) const = default;

  PointSet& add(std::size_t i) { bits |= std::uint32_t{1} << i; return *this; }
};

// Named, order-stable point universe together with the ambient dimension d.
// Ranks of point sets live in [0, d+1].
struct PointUniverse {
  std::vector<std::string> names;
  int dimension = kDefaultDimension;

  std::size_t size() const { return names.size(); }
  int rank_cap() const { return dimension + 1; }
  std::size_t table_size() const { return std::size_t{1} << names.size(); }
  PointSet full_set() const { return PointSet{(std::uint32_t{1} << names.size()) - 1}; }

  std::optional<std::size_t> index_of(std::string_view name) const;

  // Renders a subset as space-separated names in universe order; "∅" when empty.
  std::string set_name(PointSet s) const;
  std::vector<std::string> set_names(PointSet s) const;

  bool operator==(const PointUniverse&) const = default;
};

enum class Relation { Eq, Le, Ge };

std::string_view relation_symbol(Relation r); // ":", "<=", ">="

// One rank constraint over a nonempty subset: rk(set) =/<=/>= value.
struct RankConstraint {
  PointSet set;
  Relation relation = Relation::Eq;
  int value = 0;

  bool operator==(const RankConstraint&) const = default;
};

struct Statement {
  PointUniverse universe;
  std::vector<RankConstraint> hypotheses;
  std::vector<RankConstraint> conclusions;

  bool operator==(const Statement&) const = default;
};

// Validates universe and constraint shape (names unique and nonempty, dimension
// within range, point count within cap, constraint sets nonempty and in range,
// values within [0, d+1]). Throws std::invalid_argument on the first violation.
void validate_statement(const Statement& stmt, int max_points = kDefaultMaxPoints);

// Inclusive integer interval of possible ranks. lo > hi encodes a contradiction.
struct RankInterval {
  int lo = 0;
  int hi = 0;

  bool contradictory() const { return lo > hi; }
  bool operator==(const RankInterval&) const = default;
};

enum class RuleId : std::uint8_t { RS1, RS2, RS3, RS4, RS5, RS6, RS7, RS8 };
inline constexpr int kRuleCount = 8;

std::string_view rule_name(RuleId r);                 // "RS1".."RS8"
std::optional<RuleId> rule_from_name(std::string_view);

enum class StepKind : std::uint8_t { Init, Hypothesis, Rule };

std::string_view step_kind_name(StepKind k);          // "init", "hypothesis", "rule"
std::optional<StepKind> step_kind_from_name(std::string_view);

// One derivation step. Step 0 is always the init step (table defaults); each
// applied hypothesis gets one step; every rule firing gets one step. deps list
// the earlier step ids whose bounds the step consumed.
struct TraceStep {
  std::int32_t id = 0;
  StepKind kind = StepKind::Init;
  RuleId rule = RuleId::RS1;        // meaningful only for kind == Rule
  PointSet x;                       // rule operands (kind == Rule)
  PointSet y;
  PointSet target;                  // the set whose interval changed
  RankInterval before;
  RankInterval after;
  std::vector<std::int32_t> deps;
  std::int32_t hyp_index = -1;      // index into Statement::hypotheses (kind == Hypothesis)
};

// Interval table over all 2^n subsets plus the derivation trace. Intervals only
// ever narrow; per-bound provenance records which step set the current bound.
struct SaturationState {
  PointUniverse universe;
  std::vector<std::int8_t> lo, hi;            // indexed by PointSet::bits
  std::vector<std::int32_t> lo_step, hi_step; // provenance (trace id), 0 = init
  std::vector<std::uint32_t> version;         // bumped on every change (worklist filter)
  std::vector<TraceStep> trace;               // trace[0] is the init step
  std::uint32_t update_counter = 0;
  int pass_count = 0;
  std::int32_t contradiction_step = -1;       // trace id of the first lo>hi crossing
  std::optional<PointSet> contradiction_set;

  bool contradictory() const { return contradiction_step >= 0; }
  RankInterval interval(PointSet s) const {
    return RankInterval{lo[s.bits], hi[s.bits]};
  }
  std::size_t rule_step_count() const;
};

// Builds the initial table: rk(∅) = (0,0), every nonempty X = (1, min(|X|, d+1)),
// then applies each hypothesis in order (EQ intersects with (v,v), LE caps hi,
// GE raises lo), recording one hypothesis step apiece. A hypothesis that crosses
// lo > hi marks the state contradictory and stops further application.
SaturationState init_state(const Statement& stmt);

// Applies one constraint to the interval of its set. Returns the narrowed interval.
RankInterval apply_constraint(RankInterval iv, Relation rel, int value);

// Verdict helpers against a saturated interval. "Proves" means every rank in
// the interval satisfies the constraint; "refutes" means none does.
bool interval_proves(RankInterval iv, Relation rel, int value);
bool interval_refutes(RankInterval iv, Relation rel, int value);

} // namespace rankprover
