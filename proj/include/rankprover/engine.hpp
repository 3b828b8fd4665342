// Saturation engine: closes the interval table under eight narrowing rules.
//
// For subsets X, Y with I = X∩Y and U = X∪Y the rules are
//   RS1  X ⊆ Y           lo(Y) ← lo(X)                 when that raises lo(Y)
//   RS2  Y ⊆ X           lo(X) ← lo(Y)                 when that raises lo(X)
//   RS3  X ⊆ Y           hi(X) ← hi(Y)                 when that lowers hi(X)
//   RS4  Y ⊆ X           hi(Y) ← hi(X)                 when that lowers hi(Y)
//   RS5                  hi(U) ← hi(X) + hi(Y) - lo(I) when that lowers hi(U)
//   RS6                  hi(I) ← hi(X) + hi(Y) - lo(U) when that lowers hi(I)
//   RS7                  lo(X) ← lo(I) + lo(U) - hi(Y) when that raises lo(X)
//   RS8                  lo(Y) ← lo(I) + lo(U) - hi(X) when that raises lo(Y)
// (monotonicity of rank along ⊆, and submodularity read in both directions).
//
// Each firing strictly narrows one bound and appends one trace step whose deps
// cite the provenance steps of the bounds the rule read, in rule-fixed order:
//   RS1 [lo X] · RS2 [lo Y] · RS3 [hi Y] · RS4 [hi X]
//   RS5 [hi X, hi Y, lo I] · RS6 [hi X, hi Y, lo U]
//   RS7 [lo I, lo U, hi Y] · RS8 [lo I, lo U, hi X]
#pragma once

#include "rankprover/core.hpp"

#include <cstddef>
#include <iosfwd>

namespace rankprover {

enum class Strategy { FullRescan, Worklist };

std::string_view strategy_name(Strategy s); // "full", "worklist"
std::optional<Strategy> strategy_from_name(std::string_view);

enum class SaturationOutcome { Fixpoint, Contradiction, ResourceLimit };

std::string_view outcome_name(SaturationOutcome o); // "fixpoint", "contradiction", "resource-limit"

struct EngineLimits {
  double max_seconds = 0.0; // wall clock; 0 disables the check
};

struct SaturationResult {
  SaturationOutcome outcome = SaturationOutcome::Fixpoint;
  int passes = 0;
  std::size_t rule_applications = 0;
  double elapsed_ms = 0.0;
};

// Runs pair sweeps until no rule fires (fixpoint), a bound crosses
// (contradiction), or a limit trips. Pairs are enumerated with X ascending and
// Y > X; within a pair rules are tried in RS1..RS8 order. FullRescan examines
// every pair each pass; Worklist skips pairs none of whose four relevant sets
// (X, Y, I, U) changed since the start of the previous pass. Both strategies
// are deterministic and reach the same fixpoint table.
SaturationResult saturate(SaturationState& st, Strategy strategy = Strategy::Worklist,
                          const EngineLimits& limits = {});

// Tries one rule on one ordered pair; applies it and appends a trace step when
// the guard passes and the bound strictly improves. Returns whether it fired.
bool apply_rule(SaturationState& st, RuleId rule, PointSet x, PointSet y);

// What one rule would do on (x, y) against the state's current table, without
// applying it. deps carry the provenance step ids of the bounds the rule reads,
// in the rule's fixed order (see the table above).
struct RuleFacts {
  bool fires = false;
  PointSet target;
  bool lo_bound = false;
  int candidate = 0;
  std::vector<std::int32_t> deps;
};
RuleFacts evaluate_rule(const SaturationState& st, RuleId rule, PointSet x, PointSet y);

enum class ConclusionStatus { Proved, Refuted, Unknown, ContradictoryHypotheses };

std::string_view status_name(ConclusionStatus s);
std::optional<ConclusionStatus> status_from_name(std::string_view);

struct Verdict {
  RankConstraint conclusion;
  ConclusionStatus status = ConclusionStatus::Unknown;
  RankInterval interval; // final saturated interval of the conclusion set
};

// Reads verdicts off a saturated state. Contradictory hypotheses mark every
// conclusion ContradictoryHypotheses; otherwise a conclusion is Proved when the
// interval forces it, Refuted when the interval excludes it, else Unknown.
std::vector<Verdict> decide(const SaturationState& st, const Statement& stmt);

// One line per subset in ascending bitmask order, bounds plus the trace steps
// that set them: "A B : 2 2 exact lo@3 hi@0" ("∅ : 0 0 exact lo@0 hi@0").
// Exactly table_size() lines, no header.
void dump_rank_table(const SaturationState& st, std::ostream& out);

} // namespace rankprover
