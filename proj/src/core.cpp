#include "rankprover/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace rankprover {

std::optional<std::size_t> PointUniverse::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> PointUniverse::set_names(PointSet s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (s.contains(i)) out.push_back(names[i]);
  }
  return out;
}

std::string PointUniverse::set_name(PointSet s) const {
  if (s.is_empty()) return "∅";
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!s.contains(i)) continue;
    if (!out.empty()) out += ' ';
    out += names[i];
  }
  return out;
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::Eq: return ":";
    case Relation::Le: return "<=";
    case Relation::Ge: return ">=";
  }
  return ":";
}

std::string_view rule_name(RuleId r) {
  static constexpr std::string_view names[kRuleCount] = {
      "RS1", "RS2", "RS3", "RS4", "RS5", "RS6", "RS7", "RS8"};
  return names[static_cast<int>(r)];
}

std::optional<RuleId> rule_from_name(std::string_view s) {
  for (int i = 0; i < kRuleCount; ++i) {
    if (s == rule_name(static_cast<RuleId>(i))) return static_cast<RuleId>(i);
  }
  return std::nullopt;
}

std::string_view step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Init: return "init";
    case StepKind::Hypothesis: return "hypothesis";
    case StepKind::Rule: return "rule";
  }
  return "init";
}

std::optional<StepKind> step_kind_from_name(std::string_view s) {
  if (s == "init") return StepKind::Init;
  if (s == "hypothesis") return StepKind::Hypothesis;
  if (s == "rule") return StepKind::Rule;
  return std::nullopt;
}

void validate_statement(const Statement& stmt, int max_points) {
  const PointUniverse& u = stmt.universe;
  if (u.dimension < kMinDimension || u.dimension > kMaxDimension) {
    throw std::invalid_argument("dimension must be between " +
                                std::to_string(kMinDimension) + " and " +
                                std::to_string(kMaxDimension) + ", got " +
                                std::to_string(u.dimension));
  }
  if (u.names.empty()) throw std::invalid_argument("no points declared");
  int cap = std::min(max_points, kMaxPointsLimit);
  if (static_cast<int>(u.names.size()) > cap) {
    throw std::invalid_argument("too many points: " + std::to_string(u.names.size()) +
                                " declared, limit is " + std::to_string(cap));
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : u.names) {
    if (n.empty()) throw std::invalid_argument("empty point name");
    if (!seen.insert(n).second) {
      throw std::invalid_argument("duplicate point name: " + n);
    }
  }
  auto check = [&](const RankConstraint& c, const char* where) {
    if (c.set.is_empty()) {
      throw std::invalid_argument(std::string(where) + " constraint over the empty set");
    }
    if ((c.set.bits & ~u.full_set().bits) != 0) {
      throw std::invalid_argument(std::string(where) +
                                  " constraint uses a point outside the universe");
    }
    if (c.value < 0 || c.value > u.rank_cap()) {
      throw std::invalid_argument(std::string(where) + " constraint value " +
                                  std::to_string(c.value) + " outside [0, " +
                                  std::to_string(u.rank_cap()) + "]");
    }
  };
  for (const auto& h : stmt.hypotheses) check(h, "hypothesis");
  if (stmt.conclusions.empty()) throw std::invalid_argument("no conclusion given");
  for (const auto& c : stmt.conclusions) check(c, "conclusion");
}

std::size_t SaturationState::rule_step_count() const {
  std::size_t n = 0;
  for (const auto& s : trace) {
    if (s.kind == StepKind::Rule) ++n;
  }
  return n;
}

RankInterval apply_constraint(RankInterval iv, Relation rel, int value) {
  switch (rel) {
    case Relation::Eq:
      return RankInterval{std::max(iv.lo, value), std::min(iv.hi, value)};
    case Relation::Le:
      return RankInterval{iv.lo, std::min(iv.hi, value)};
    case Relation::Ge:
      return RankInterval{std::max(iv.lo, value), iv.hi};
  }
  return iv;
}

bool interval_proves(RankInterval iv, Relation rel, int value) {
  if (iv.contradictory()) return false;
  switch (rel) {
    case Relation::Eq: return iv.lo == value && iv.hi == value;
    case Relation::Le: return iv.hi <= value;
    case Relation::Ge: return iv.lo >= value;
  }
  return false;
}

bool interval_refutes(RankInterval iv, Relation rel, int value) {
  if (iv.contradictory()) return false;
  switch (rel) {
    case Relation::Eq: return value < iv.lo || value > iv.hi;
    case Relation::Le: return iv.lo > value;
    case Relation::Ge: return iv.hi < value;
  }
  return false;
}

SaturationState init_state(const Statement& stmt) {
  SaturationState st;
  st.universe = stmt.universe;
  const std::size_t n = st.universe.table_size();
  const int cap = st.universe.rank_cap();
  st.lo.assign(n, 1);
  st.hi.assign(n, 0);
  st.lo_step.assign(n, 0);
  st.hi_step.assign(n, 0);
  st.version.assign(n, 0);
  for (std::uint32_t s = 1; s < n; ++s) {
    st.hi[s] = static_cast<std::int8_t>(std::min(std::popcount(s), cap));
  }
  st.lo[0] = 0; // rk(∅) = (0, 0)

  TraceStep init;
  init.id = 0;
  init.kind = StepKind::Init;
  st.trace.push_back(init);

  for (std::size_t i = 0; i < stmt.hypotheses.size(); ++i) {
    if (st.contradictory()) break;
    const RankConstraint& h = stmt.hypotheses[i];
    const std::uint32_t s = h.set.bits;
    RankInterval before{st.lo[s], st.hi[s]};
    RankInterval after = apply_constraint(before, h.relation, h.value);
    // Redundant hypotheses (after == before) still get a step: certificates
    // cite hypotheses by step id.
    TraceStep step;
    step.id = static_cast<std::int32_t>(st.trace.size());
    step.kind = StepKind::Hypothesis;
    step.target = h.set;
    step.before = before;
    step.after = after;
    step.hyp_index = static_cast<std::int32_t>(i);
    st.trace.push_back(step);

    // Clamp stores defensively; trace steps keep the exact values and the
    // dimension cap keeps validated inputs far inside int8 range anyway.
    auto clamp8 = [](int v) {
      return static_cast<std::int8_t>(std::clamp(v, -100, 100));
    };
    if (after.lo != before.lo) {
      st.lo[s] = clamp8(after.lo);
      st.lo_step[s] = step.id;
    }
    if (after.hi != before.hi) {
      st.hi[s] = clamp8(after.hi);
      st.hi_step[s] = step.id;
    }
    if (after != before) {
      st.version[s] = ++st.update_counter;
    }
    if (after.contradictory()) {
      st.contradiction_step = step.id;
      st.contradiction_set = h.set;
    }
  }
  return st;
}

} // namespace rankprover
