#include "rankprover/engine.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace rankprover {
namespace {

struct Firing {
  std::uint32_t target = 0;
  bool lo_bound = false; // which bound of target improves
  int cand = 0;
  std::array<std::int32_t, 3> deps{};
  int dep_count = 0;
};

// Guard evaluation for one rule on the ordered pair (x, y). Returns true and
// fills `f` when the rule fires, i.e. its candidate strictly improves the
// current bound of its target.
inline bool eval_rule(const SaturationState& st, RuleId rule, std::uint32_t x, std::uint32_t y,
                      std::uint32_t i, std::uint32_t u, Firing& f) {
  const auto& lo = st.lo;
  const auto& hi = st.hi;
  const auto& ls = st.lo_step;
  const auto& hs = st.hi_step;
  switch (rule) {
    case RuleId::RS1: // X ⊆ Y: lift lo(Y) to lo(X)
      if ((x & y) != x || lo[x] <= lo[y]) return false;
      f = {y, true, lo[x], {ls[x]}, 1};
      return true;
    case RuleId::RS2: // Y ⊆ X: lift lo(X) to lo(Y)
      if ((y & x) != y || lo[y] <= lo[x]) return false;
      f = {x, true, lo[y], {ls[y]}, 1};
      return true;
    case RuleId::RS3: // X ⊆ Y: cap hi(X) at hi(Y)
      if ((x & y) != x || hi[y] >= hi[x]) return false;
      f = {x, false, hi[y], {hs[y]}, 1};
      return true;
    case RuleId::RS4: // Y ⊆ X: cap hi(Y) at hi(X)
      if ((y & x) != y || hi[x] >= hi[y]) return false;
      f = {y, false, hi[x], {hs[x]}, 1};
      return true;
    case RuleId::RS5: { // hi(U) ← hi(X) + hi(Y) - lo(I)
      int cand = int(hi[x]) + int(hi[y]) - int(lo[i]);
      if (cand >= hi[u]) return false;
      f = {u, false, cand, {hs[x], hs[y], ls[i]}, 3};
      return true;
    }
    case RuleId::RS6: { // hi(I) ← hi(X) + hi(Y) - lo(U)
      int cand = int(hi[x]) + int(hi[y]) - int(lo[u]);
      if (cand >= hi[i]) return false;
      f = {i, false, cand, {hs[x], hs[y], ls[u]}, 3};
      return true;
    }
    case RuleId::RS7: { // lo(X) ← lo(I) + lo(U) - hi(Y)
      int cand = int(lo[i]) + int(lo[u]) - int(hi[y]);
      if (cand <= lo[x]) return false;
      f = {x, true, cand, {ls[i], ls[u], hs[y]}, 3};
      return true;
    }
    case RuleId::RS8: { // lo(Y) ← lo(I) + lo(U) - hi(X)
      int cand = int(lo[i]) + int(lo[u]) - int(hi[x]);
      if (cand <= lo[y]) return false;
      f = {y, true, cand, {ls[i], ls[u], hs[x]}, 3};
      return true;
    }
  }
  return false;
}

inline void apply_firing(SaturationState& st, RuleId rule, std::uint32_t x, std::uint32_t y,
                         const Firing& f) {
  TraceStep step;
  step.id = static_cast<std::int32_t>(st.trace.size());
  step.kind = StepKind::Rule;
  step.rule = rule;
  step.x = PointSet{x};
  step.y = PointSet{y};
  step.target = PointSet{f.target};
  step.before = RankInterval{st.lo[f.target], st.hi[f.target]};
  step.deps.assign(f.deps.begin(), f.deps.begin() + f.dep_count);
  if (f.lo_bound) {
    step.after = RankInterval{f.cand, step.before.hi};
    st.lo[f.target] = static_cast<std::int8_t>(f.cand);
    st.lo_step[f.target] = step.id;
  } else {
    step.after = RankInterval{step.before.lo, f.cand};
    st.hi[f.target] = static_cast<std::int8_t>(f.cand);
    st.hi_step[f.target] = step.id;
  }
  st.version[f.target] = ++st.update_counter;
  if (step.after.contradictory() && !st.contradictory()) {
    st.contradiction_step = step.id;
    st.contradiction_set = PointSet{f.target};
  }
  st.trace.push_back(std::move(step));
}

// Tries all eight rules, in order, once each on the pair (x, y). Returns the
// number of firings; stops early on contradiction.
inline int examine_pair(SaturationState& st, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t i = x & y;
  const std::uint32_t u = x | y;
  int fired = 0;
  for (int r = 0; r < kRuleCount; ++r) {
    Firing f;
    if (eval_rule(st, static_cast<RuleId>(r), x, y, i, u, f)) {
      apply_firing(st, static_cast<RuleId>(r), x, y, f);
      ++fired;
      if (st.contradictory()) break;
    }
  }
  return fired;
}

} // namespace

std::string_view strategy_name(Strategy s) {
  return s == Strategy::FullRescan ? "full" : "worklist";
}

std::optional<Strategy> strategy_from_name(std::string_view s) {
  if (s == "full") return Strategy::FullRescan;
  if (s == "worklist") return Strategy::Worklist;
  return std::nullopt;
}

std::string_view outcome_name(SaturationOutcome o) {
  switch (o) {
    case SaturationOutcome::Fixpoint: return "fixpoint";
    case SaturationOutcome::Contradiction: return "contradiction";
    case SaturationOutcome::ResourceLimit: return "resource-limit";
  }
  return "fixpoint";
}

bool apply_rule(SaturationState& st, RuleId rule, PointSet x, PointSet y) {
  Firing f;
  if (!eval_rule(st, rule, x.bits, y.bits, (x & y).bits, (x | y).bits, f)) return false;
  apply_firing(st, rule, x.bits, y.bits, f);
  return true;
}

RuleFacts evaluate_rule(const SaturationState& st, RuleId rule, PointSet x, PointSet y) {
  RuleFacts out;
  Firing f;
  if (!eval_rule(st, rule, x.bits, y.bits, (x & y).bits, (x | y).bits, f)) return out;
  out.fires = true;
  out.target = PointSet{f.target};
  out.lo_bound = f.lo_bound;
  out.candidate = f.cand;
  out.deps.assign(f.deps.begin(), f.deps.begin() + f.dep_count);
  return out;
}

SaturationResult saturate(SaturationState& st, Strategy strategy, const EngineLimits& limits) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  SaturationResult res;
  auto finish = [&](SaturationOutcome o) {
    res.outcome = o;
    res.elapsed_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(clock::now() - t0)
            .count();
    return res;
  };

  if (st.contradictory()) return finish(SaturationOutcome::Contradiction);

  const std::uint32_t n = static_cast<std::uint32_t>(st.universe.table_size());
  // Generous ceiling: every productive pass narrows at least one bound and no
  // bound moves more than rank_cap + 1 times. Trips only on an engine bug.
  const long max_passes =
      static_cast<long>(n) * 2 * (st.universe.rank_cap() + 1) + 2;

  // Worklist filter: examine a pair when one of X, Y, X∩Y, X∪Y changed since
  // the start of the previous pass (version > floor). Anything older was
  // already seen with its current value by the pass that followed the change.
  std::uint32_t floor_version = 0;
  const bool filtered = strategy == Strategy::Worklist;

  for (;;) {
    const std::uint32_t pass_start_counter = st.update_counter;
    std::size_t fired_this_pass = 0;
    bool time_up = false;

    for (std::uint32_t x = 1; x < n && !time_up; ++x) {
      if (limits.max_seconds > 0 && (x & 0xFFu) == 0) {
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (secs > limits.max_seconds) time_up = true;
      }
      const auto& ver = st.version;
      for (std::uint32_t y = x + 1; y < n; ++y) {
        if (filtered) {
          const std::uint32_t i = x & y;
          const std::uint32_t u = x | y;
          if (ver[x] <= floor_version && ver[y] <= floor_version &&
              ver[i] <= floor_version && ver[u] <= floor_version) {
            continue;
          }
        }
        int fired = examine_pair(st, x, y);
        if (fired > 0) {
          fired_this_pass += static_cast<std::size_t>(fired);
          res.rule_applications += static_cast<std::size_t>(fired);
          if (st.contradictory()) {
            ++res.passes;
            st.pass_count = res.passes;
            return finish(SaturationOutcome::Contradiction);
          }
        }
      }
    }

    ++res.passes;
    st.pass_count = res.passes;
    if (time_up || res.passes >= max_passes) return finish(SaturationOutcome::ResourceLimit);
    if (fired_this_pass == 0) return finish(SaturationOutcome::Fixpoint);
    floor_version = pass_start_counter;
  }
}

std::string_view status_name(ConclusionStatus s) {
  switch (s) {
    case ConclusionStatus::Proved: return "proved";
    case ConclusionStatus::Refuted: return "refuted";
    case ConclusionStatus::Unknown: return "unknown";
    case ConclusionStatus::ContradictoryHypotheses: return "contradictory-hypotheses";
  }
  return "unknown";
}

std::optional<ConclusionStatus> status_from_name(std::string_view s) {
  if (s == "proved") return ConclusionStatus::Proved;
  if (s == "refuted") return ConclusionStatus::Refuted;
  if (s == "unknown") return ConclusionStatus::Unknown;
  if (s == "contradictory-hypotheses") return ConclusionStatus::ContradictoryHypotheses;
  return std::nullopt;
}

std::vector<Verdict> decide(const SaturationState& st, const Statement& stmt) {
  std::vector<Verdict> out;
  out.reserve(stmt.conclusions.size());
  for (const auto& c : stmt.conclusions) {
    Verdict v;
    v.conclusion = c;
    v.interval = st.interval(c.set);
    if (st.contradictory()) {
      v.status = ConclusionStatus::ContradictoryHypotheses;
    } else if (interval_proves(v.interval, c.relation, c.value)) {
      v.status = ConclusionStatus::Proved;
    } else if (interval_refutes(v.interval, c.relation, c.value)) {
      v.status = ConclusionStatus::Refuted;
    } else {
      v.status = ConclusionStatus::Unknown;
    }
    out.push_back(v);
  }
  return out;
}

void dump_rank_table(const SaturationState& st, std::ostream& out) {
  const std::size_t n = st.universe.table_size();
  for (std::size_t s = 0; s < n; ++s) {
    out << st.universe.set_name(PointSet{static_cast<std::uint32_t>(s)}) << " : "
        << int(st.lo[s]) << ' ' << int(st.hi[s])
        << (st.lo[s] == st.hi[s] ? " exact" : " range")
        << " lo@" << st.lo_step[s] << " hi@" << st.hi_step[s] << '\n';
  }
}

} // namespace rankprover
