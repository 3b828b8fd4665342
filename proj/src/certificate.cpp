#include "rankprover/certificate.hpp"

#include "rankprover/parser.hpp"
#include "rankprover/sha256.hpp"
#include "rankprover/version.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace rankprover {

using ordered_json = nlohmann::ordered_json;

int Certificate::lemma_of_step(std::int32_t id) const {
  for (const auto& [sid, lemma] : step_lemma) {
    if (sid == id) return lemma;
  }
  return -1;
}

namespace {

std::vector<std::string> set_names(const std::vector<std::string>& points, PointSet s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (s.contains(i)) out.push_back(points[i]);
  }
  return out;
}

// Groups rule steps by target set, insertion-ordered by first step id.
struct LemmaGroup {
  PointSet goal;
  std::vector<std::int32_t> step_ids;
};

std::vector<LemmaGroup> group_rule_steps(const std::vector<TraceStep>& steps) {
  std::vector<LemmaGroup> groups;
  std::map<std::uint32_t, std::size_t> index;
  for (const auto& s : steps) {
    if (s.kind != StepKind::Rule) continue;
    auto it = index.find(s.target.bits);
    if (it == index.end()) {
      index.emplace(s.target.bits, groups.size());
      groups.push_back({s.target, {s.id}});
    } else {
      groups[it->second].step_ids.push_back(s.id);
    }
  }
  return groups;
}

// Deterministic lemma order: topological over "uses a bound proved by", ready
// lemmas emitted smallest-last-step-id first. If the dependency relation is
// cyclic (possible when two sets alternately improve each other), the
// remaining lemmas fall back to last-step-id order. A bottom lemma always goes
// last. Returns a permutation of group indices.
std::vector<std::size_t> order_lemmas(const std::vector<LemmaGroup>& groups,
                                      const std::vector<TraceStep>& steps,
                                      int bottom_group /* -1 when absent */) {
  const std::size_t n = groups.size();
  std::map<std::int32_t, const TraceStep*> by_id;
  for (const auto& s : steps) by_id[s.id] = &s;
  std::map<std::uint32_t, std::size_t> group_of;
  for (std::size_t g = 0; g < n; ++g) group_of[groups[g].goal.bits] = g;

  std::vector<std::vector<std::size_t>> fwd(n); // g -> lemmas that use g
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::set<std::size_t>> preds(n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::int32_t sid : groups[g].step_ids) {
      for (std::int32_t d : by_id.at(sid)->deps) {
        auto it = by_id.find(d);
        if (it == by_id.end() || it->second->kind != StepKind::Rule) continue;
        std::size_t pg = group_of.at(it->second->target.bits);
        if (pg != g && preds[g].insert(pg).second) {
          fwd[pg].push_back(g);
          ++indeg[g];
        }
      }
    }
  }

  auto last_id = [&](std::size_t g) { return groups[g].step_ids.back(); };
  auto better = [&](std::size_t a, std::size_t b) { return last_id(a) < last_id(b); };

  std::vector<std::size_t> order;
  std::vector<char> emitted(n, 0);
  std::vector<std::size_t> ready;
  for (std::size_t g = 0; g < n; ++g) {
    if (indeg[g] == 0 && static_cast<int>(g) != bottom_group) ready.push_back(g);
  }
  while (order.size() + (bottom_group >= 0 ? 1u : 0u) < n) {
    if (ready.empty()) {
      // Cycle fallback: emit everything left by ascending last step id.
      std::vector<std::size_t> rest;
      for (std::size_t g = 0; g < n; ++g) {
        if (!emitted[g] && static_cast<int>(g) != bottom_group) rest.push_back(g);
      }
      std::sort(rest.begin(), rest.end(), better);
      for (auto g : rest) {
        order.push_back(g);
        emitted[g] = 1;
      }
      break;
    }
    auto it = std::min_element(ready.begin(), ready.end(), better);
    std::size_t g = *it;
    ready.erase(it);
    order.push_back(g);
    emitted[g] = 1;
    for (std::size_t h : fwd[g]) {
      if (--indeg[h] == 0 && !emitted[h] && static_cast<int>(h) != bottom_group) {
        ready.push_back(h);
      }
    }
  }
  if (bottom_group >= 0) order.push_back(static_cast<std::size_t>(bottom_group));
  return order;
}

} // namespace

Certificate extract_certificate(const SaturationState& st, const Statement& stmt,
                                const SaturationResult& run, Strategy strategy) {
  if (run.outcome == SaturationOutcome::ResourceLimit) {
    throw std::invalid_argument("cannot certify an interrupted saturation");
  }
  const auto& trace = st.trace;

  // Which steps survive: init, every hypothesis step, and the dependency
  // closure of the conclusion bounds plus the contradiction step.
  std::vector<char> keep(trace.size(), 0);
  std::vector<std::int32_t> work;
  auto mark = [&](std::int32_t id) {
    if (id >= 0 && !keep[id]) {
      keep[id] = 1;
      work.push_back(id);
    }
  };
  keep[0] = 1;
  for (const auto& s : trace) {
    if (s.kind == StepKind::Hypothesis) keep[s.id] = 1;
  }
  if (st.contradictory()) mark(st.contradiction_step);
  for (const auto& c : stmt.conclusions) {
    mark(st.lo_step[c.set.bits]);
    mark(st.hi_step[c.set.bits]);
  }
  while (!work.empty()) {
    std::int32_t id = work.back();
    work.pop_back();
    for (std::int32_t d : trace[id].deps) mark(d);
  }

  // Pruned replay on a fresh table. Hypothesis step ids from init_state match
  // the original trace. Rule steps keep their original ids; the recorded old
  // intervals and deps are the replay's, so the certificate stands alone.
  SaturationState replay = init_state(stmt);
  Certificate cert;
  cert.steps = replay.trace;
  for (const auto& orig : trace) {
    if (orig.kind != StepKind::Rule || !keep[orig.id]) continue;
    RuleFacts f = evaluate_rule(replay, orig.rule, orig.x, orig.y);
    if (!f.fires || f.target != orig.target ||
        f.candidate != (f.lo_bound ? orig.after.lo : orig.after.hi)) {
      throw std::logic_error("certificate replay diverged from the trace");
    }
    TraceStep s;
    s.id = orig.id;
    s.kind = StepKind::Rule;
    s.rule = orig.rule;
    s.x = orig.x;
    s.y = orig.y;
    s.target = orig.target;
    s.before = replay.interval(orig.target);
    s.deps = f.deps;
    const std::uint32_t t = orig.target.bits;
    if (f.lo_bound) {
      s.after = RankInterval{f.candidate, s.before.hi};
      replay.lo[t] = static_cast<std::int8_t>(f.candidate);
      replay.lo_step[t] = orig.id;
    } else {
      s.after = RankInterval{s.before.lo, f.candidate};
      replay.hi[t] = static_cast<std::int8_t>(f.candidate);
      replay.hi_step[t] = orig.id;
    }
    if (s.after.contradictory() && !replay.contradictory()) {
      replay.contradiction_step = s.id;
      replay.contradiction_set = s.target;
    }
    cert.steps.push_back(s);
  }

  // Lemmas: one per distinct rule-step target, canonical order.
  std::vector<LemmaGroup> groups = group_rule_steps(cert.steps);
  int bottom_group = -1;
  if (replay.contradictory()) {
    PointSet cset = *replay.contradiction_set;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].goal == cset) bottom_group = static_cast<int>(g);
    }
    if (bottom_group < 0) {
      // Contradiction crossed on a hypothesis step: distinguished empty lemma.
      groups.push_back({cset, {}});
      bottom_group = static_cast<int>(groups.size()) - 1;
    }
  }
  for (std::size_t g : order_lemmas(groups, cert.steps, bottom_group)) {
    Lemma lem;
    lem.goal = groups[g].goal;
    lem.bound = replay.interval(groups[g].goal);
    lem.bottom = static_cast<int>(g) == bottom_group;
    lem.step_ids = groups[g].step_ids;
    int lemma_index = static_cast<int>(cert.lemmas.size());
    for (std::int32_t sid : lem.step_ids) cert.step_lemma.push_back({sid, lemma_index});
    cert.lemmas.push_back(std::move(lem));
  }

  cert.header.version = kCertFormatVersion;
  cert.header.tool = std::string(kToolName) + " " + kToolVersion;
  cert.header.dim = stmt.universe.dimension;
  cert.header.points = stmt.universe.names;
  cert.header.stmt_sha256 = sha256_hex(print_statement(stmt));
  cert.header.strategy = std::string(strategy_name(strategy));
  cert.header.outcome = std::string(outcome_name(run.outcome));
  cert.header.rule_steps = cert.steps.size() - replay.trace.size();
  cert.header.timing_ms = run.elapsed_ms;
  cert.header.deterministic = true;

  cert.verdicts = decide(replay, stmt);
  return cert;
}

// ---------------------------------------------------------------------------
// Serialization: one JSON record per line; header, lemmas, steps (ascending
// id), verdicts. Field order is fixed.

namespace {

ordered_json interval_json(RankInterval iv) { return ordered_json::array({iv.lo, iv.hi}); }

} // namespace

void serialize_certificate(const Certificate& cert, std::ostream& out) {
  const auto& pts = cert.header.points;
  ordered_json h;
  h["type"] = "header";
  h["version"] = cert.header.version;
  h["tool"] = cert.header.tool;
  h["dim"] = cert.header.dim;
  h["points"] = pts;
  h["stmt_sha256"] = cert.header.stmt_sha256;
  h["strategy"] = cert.header.strategy;
  h["outcome"] = cert.header.outcome;
  h["rule_steps"] = cert.header.rule_steps;
  h["timing_ms"] = cert.header.timing_ms;
  h["deterministic"] = cert.header.deterministic;
  out << h.dump() << '\n';

  for (std::size_t i = 0; i < cert.lemmas.size(); ++i) {
    const Lemma& l = cert.lemmas[i];
    ordered_json j;
    j["type"] = "lemma";
    j["index"] = i;
    j["goal"] = set_names(pts, l.goal);
    j["bound"] = interval_json(l.bound);
    if (l.bottom) j["bottom"] = true;
    j["steps"] = l.step_ids;
    out << j.dump() << '\n';
  }

  for (const TraceStep& s : cert.steps) {
    ordered_json j;
    j["type"] = "step";
    j["id"] = s.id;
    j["kind"] = std::string(step_kind_name(s.kind));
    if (s.kind == StepKind::Rule) {
      j["rule"] = std::string(rule_name(s.rule));
      j["X"] = set_names(pts, s.x);
      j["Y"] = set_names(pts, s.y);
    }
    j["T"] = set_names(pts, s.target);
    j["old"] = interval_json(s.before);
    j["new"] = interval_json(s.after);
    j["deps"] = s.deps;
    if (s.kind == StepKind::Hypothesis) j["hyp"] = s.hyp_index;
    if (s.kind == StepKind::Rule) j["lemma"] = cert.lemma_of_step(s.id);
    out << j.dump() << '\n';
  }

  for (const Verdict& v : cert.verdicts) {
    ordered_json j;
    j["type"] = "verdict";
    j["set"] = set_names(pts, v.conclusion.set);
    j["relation"] = std::string(relation_symbol(v.conclusion.relation));
    j["value"] = v.conclusion.value;
    j["status"] = std::string(status_name(v.status));
    j["final"] = interval_json(v.interval);
    out << j.dump() << '\n';
  }
}

std::string serialize_certificate(const Certificate& cert) {
  std::ostringstream ss;
  serialize_certificate(cert, ss);
  return ss.str();
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

const ordered_json& field(const ordered_json& j, const char* key, int line) {
  auto it = j.find(key);
  if (it == j.end()) throw CertParseError(line, std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const ordered_json& j, const char* key, int line) {
  const auto& f = field(j, key, line);
  if (!f.is_number_integer()) throw CertParseError(line, std::string("field '") + key + "' must be an integer");
  return f.get<int>();
}

std::string str_field(const ordered_json& j, const char* key, int line) {
  const auto& f = field(j, key, line);
  if (!f.is_string()) throw CertParseError(line, std::string("field '") + key + "' must be a string");
  return f.get<std::string>();
}

RankInterval interval_field(const ordered_json& j, const char* key, int line) {
  const auto& f = field(j, key, line);
  if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() || !f[1].is_number_integer()) {
    throw CertParseError(line, std::string("field '") + key + "' must be [lo, hi]");
  }
  return RankInterval{f[0].get<int>(), f[1].get<int>()};
}

PointSet set_field(const ordered_json& j, const char* key,
                   const std::map<std::string, std::size_t>& index, int line) {
  const auto& f = field(j, key, line);
  if (!f.is_array()) throw CertParseError(line, std::string("field '") + key + "' must be a name array");
  PointSet s;
  for (const auto& e : f) {
    if (!e.is_string()) throw CertParseError(line, std::string("field '") + key + "' must hold names");
    auto it = index.find(e.get<std::string>());
    if (it == index.end()) {
      throw CertParseError(line, "unknown point '" + e.get<std::string>() + "' in '" + key + "'");
    }
    s.add(it->second);
  }
  return s;
}

std::vector<std::int32_t> ids_field(const ordered_json& j, const char* key, int line) {
  const auto& f = field(j, key, line);
  if (!f.is_array()) throw CertParseError(line, std::string("field '") + key + "' must be an id array");
  std::vector<std::int32_t> out;
  for (const auto& e : f) {
    if (!e.is_number_integer()) throw CertParseError(line, std::string("field '") + key + "' must hold integers");
    out.push_back(e.get<std::int32_t>());
  }
  return out;
}

} // namespace

Certificate parse_certificate(std::istream& in) {
  Certificate cert;
  std::map<std::string, std::size_t> point_index;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const std::exception& e) {
      throw CertParseError(lineno, std::string("not a JSON record: ") + e.what());
    }
    if (!j.is_object()) throw CertParseError(lineno, "record must be a JSON object");
    std::string type = str_field(j, "type", lineno);

    if (type == "header") {
      if (have_header) throw CertParseError(lineno, "duplicate header");
      have_header = true;
      cert.header.version = int_field(j, "version", lineno);
      cert.header.tool = str_field(j, "tool", lineno);
      cert.header.dim = int_field(j, "dim", lineno);
      const auto& pts = field(j, "points", lineno);
      if (!pts.is_array()) throw CertParseError(lineno, "'points' must be an array");
      for (const auto& p : pts) {
        if (!p.is_string()) throw CertParseError(lineno, "'points' must hold names");
        cert.header.points.push_back(p.get<std::string>());
      }
      for (std::size_t i = 0; i < cert.header.points.size(); ++i) {
        if (!point_index.emplace(cert.header.points[i], i).second) {
          throw CertParseError(lineno, "duplicate point in header");
        }
      }
      if (cert.header.points.size() > 32) throw CertParseError(lineno, "too many points");
      cert.header.stmt_sha256 = str_field(j, "stmt_sha256", lineno);
      cert.header.strategy = str_field(j, "strategy", lineno);
      cert.header.outcome = str_field(j, "outcome", lineno);
      int rs = int_field(j, "rule_steps", lineno);
      if (rs < 0) throw CertParseError(lineno, "'rule_steps' must be nonnegative");
      cert.header.rule_steps = static_cast<std::size_t>(rs);
      const auto& tm = field(j, "timing_ms", lineno);
      if (!tm.is_number()) throw CertParseError(lineno, "'timing_ms' must be a number");
      cert.header.timing_ms = tm.get<double>();
      const auto& det = field(j, "deterministic", lineno);
      if (!det.is_boolean()) throw CertParseError(lineno, "'deterministic' must be a boolean");
      cert.header.deterministic = det.get<bool>();
      continue;
    }

    if (!have_header) throw CertParseError(lineno, "header record must come first");

    if (type == "lemma") {
      Lemma l;
      int idx = int_field(j, "index", lineno);
      if (idx != static_cast<int>(cert.lemmas.size())) {
        throw CertParseError(lineno, "lemma index out of order");
      }
      l.goal = set_field(j, "goal", point_index, lineno);
      l.bound = interval_field(j, "bound", lineno);
      if (j.contains("bottom")) {
        if (!j["bottom"].is_boolean()) throw CertParseError(lineno, "'bottom' must be a boolean");
        l.bottom = j["bottom"].get<bool>();
      }
      l.step_ids = ids_field(j, "steps", lineno);
      cert.lemmas.push_back(std::move(l));
    } else if (type == "step") {
      TraceStep s;
      s.id = int_field(j, "id", lineno);
      std::string kind = str_field(j, "kind", lineno);
      auto k = step_kind_from_name(kind);
      if (!k) throw CertParseError(lineno, "unknown step kind '" + kind + "'");
      s.kind = *k;
      if (s.kind == StepKind::Rule) {
        std::string rn = str_field(j, "rule", lineno);
        auto r = rule_from_name(rn);
        if (!r) throw CertParseError(lineno, "unknown rule '" + rn + "'");
        s.rule = *r;
        s.x = set_field(j, "X", point_index, lineno);
        s.y = set_field(j, "Y", point_index, lineno);
      }
      s.target = set_field(j, "T", point_index, lineno);
      s.before = interval_field(j, "old", lineno);
      s.after = interval_field(j, "new", lineno);
      s.deps = ids_field(j, "deps", lineno);
      if (s.kind == StepKind::Hypothesis) {
        s.hyp_index = int_field(j, "hyp", lineno);
      }
      if (s.kind == StepKind::Rule) {
        cert.step_lemma.push_back({s.id, int_field(j, "lemma", lineno)});
      }
      cert.steps.push_back(std::move(s));
    } else if (type == "verdict") {
      Verdict v;
      v.conclusion.set = set_field(j, "set", point_index, lineno);
      std::string rel = str_field(j, "relation", lineno);
      if (rel == ":") {
        v.conclusion.relation = Relation::Eq;
      } else if (rel == "<=") {
        v.conclusion.relation = Relation::Le;
      } else if (rel == ">=") {
        v.conclusion.relation = Relation::Ge;
      } else {
        throw CertParseError(lineno, "unknown relation '" + rel + "'");
      }
      v.conclusion.value = int_field(j, "value", lineno);
      std::string stat = str_field(j, "status", lineno);
      auto st = status_from_name(stat);
      if (!st) throw CertParseError(lineno, "unknown status '" + stat + "'");
      v.status = *st;
      v.interval = interval_field(j, "final", lineno);
      cert.verdicts.push_back(std::move(v));
    } else {
      throw CertParseError(lineno, "unknown record type '" + type + "'");
    }
  }
  if (!have_header) throw CertParseError(lineno, "missing header record");
  return cert;
}

Certificate parse_certificate_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_certificate(ss);
}

// ---------------------------------------------------------------------------
// Checker. Deliberately self-contained: its own table, its own copy of the
// rule arithmetic, no calls into the saturation engine.

namespace {

struct RuleCheck {
  bool applicable = false; // subset precondition holds (always true for RS5..8)
  bool improves = false;   // candidate strictly narrows the target bound
  std::uint32_t target = 0;
  bool lo_bound = false;
  int cand = 0;
  std::int32_t deps[3] = {0, 0, 0};
  int ndeps = 0;
};

RuleCheck recompute_rule(const std::vector<int>& lo, const std::vector<int>& hi,
                         const std::vector<std::int32_t>& lop,
                         const std::vector<std::int32_t>& hip, RuleId r, std::uint32_t x,
                         std::uint32_t y) {
  RuleCheck rc;
  const std::uint32_t i = x & y;
  const std::uint32_t u = x | y;
  switch (r) {
    case RuleId::RS1:
      if ((x & y) != x) return rc;
      rc = {true, lo[x] > lo[y], y, true, lo[x], {lop[x]}, 1};
      break;
    case RuleId::RS2:
      if ((y & x) != y) return rc;
      rc = {true, lo[y] > lo[x], x, true, lo[y], {lop[y]}, 1};
      break;
    case RuleId::RS3:
      if ((x & y) != x) return rc;
      rc = {true, hi[y] < hi[x], x, false, hi[y], {hip[y]}, 1};
      break;
    case RuleId::RS4:
      if ((y & x) != y) return rc;
      rc = {true, hi[x] < hi[y], y, false, hi[x], {hip[x]}, 1};
      break;
    case RuleId::RS5:
      rc = {true, false, u, false, hi[x] + hi[y] - lo[i], {hip[x], hip[y], lop[i]}, 3};
      rc.improves = rc.cand < hi[u];
      break;
    case RuleId::RS6:
      rc = {true, false, i, false, hi[x] + hi[y] - lo[u], {hip[x], hip[y], lop[u]}, 3};
      rc.improves = rc.cand < hi[i];
      break;
    case RuleId::RS7:
      rc = {true, false, x, true, lo[i] + lo[u] - hi[y], {lop[i], lop[u], hip[y]}, 3};
      rc.improves = rc.cand > lo[x];
      break;
    case RuleId::RS8:
      rc = {true, false, y, true, lo[i] + lo[u] - hi[x], {lop[i], lop[u], hip[x]}, 3};
      rc.improves = rc.cand > lo[y];
      break;
  }
  return rc;
}

struct Failure {
  std::int32_t step_id;
  const char* reason;
  std::string detail;
};

} // namespace

CheckResult check_certificate(const Certificate& cert, const Statement& stmt) {
  auto fail = [](std::int32_t step, const char* reason, std::string detail) {
    CheckResult r;
    r.valid = false;
    r.step_id = step;
    r.reason = reason;
    r.detail = std::move(detail);
    return r;
  };

  // Header binds the certificate to this exact statement.
  if (cert.header.version != kCertFormatVersion) {
    return fail(-1, "hash-mismatch",
                "unsupported format version " + std::to_string(cert.header.version));
  }
  if (cert.header.dim != stmt.universe.dimension) {
    return fail(-1, "hash-mismatch", "dimension differs from the statement");
  }
  if (cert.header.points != stmt.universe.names) {
    return fail(-1, "hash-mismatch", "point list differs from the statement");
  }
  if (cert.header.stmt_sha256 != sha256_hex(print_statement(stmt))) {
    return fail(-1, "hash-mismatch", "statement hash differs");
  }
  if (cert.header.strategy != "full" && cert.header.strategy != "worklist") {
    return fail(-1, "hash-mismatch", "unknown strategy '" + cert.header.strategy + "'");
  }
  const bool claims_contradiction = cert.header.outcome == "contradiction";
  if (!claims_contradiction && cert.header.outcome != "fixpoint") {
    return fail(-1, "hash-mismatch", "unknown outcome '" + cert.header.outcome + "'");
  }

  // Fresh table: rk(∅) = (0,0), nonempty X = (1, min(|X|, d+1)); provenance 0.
  const std::size_t n = stmt.universe.table_size();
  const int cap = stmt.universe.rank_cap();
  std::vector<int> lo(n, 1), hi(n, 0);
  std::vector<std::int32_t> lop(n, 0), hip(n, 0);
  lo[0] = 0;
  for (std::size_t s = 1; s < n; ++s) {
    hi[s] = std::min(std::popcount(static_cast<std::uint32_t>(s)), cap);
  }

  if (cert.steps.empty()) return fail(-1, "bad-arithmetic", "no steps (missing init step)");
  {
    const TraceStep& s0 = cert.steps.front();
    if (s0.id != 0 || s0.kind != StepKind::Init || !s0.target.is_empty() ||
        s0.before != RankInterval{0, 0} || s0.after != RankInterval{0, 0} || !s0.deps.empty()) {
      return fail(s0.id, "bad-arithmetic", "malformed init step");
    }
  }

  std::map<std::int32_t, char> seen_ids; // id -> is-rule-step
  seen_ids[0] = 0;
  std::size_t next_hyp = 0;
  std::size_t rule_steps = 0;
  bool crossed = false;
  PointSet crossing_set;
  std::int32_t last_id = 0;

  for (std::size_t si = 1; si < cert.steps.size(); ++si) {
    const TraceStep& s = cert.steps[si];
    if (s.id <= last_id) return fail(s.id, "dep-cycle", "step ids must strictly increase");
    last_id = s.id;
    if (crossed) {
      return fail(s.id, "bad-arithmetic", "steps continue past the contradiction");
    }
    const std::uint32_t t = s.target.bits;
    if (t >= n) return fail(s.id, "bad-arithmetic", "target outside the universe");

    if (s.kind == StepKind::Init) {
      return fail(s.id, "bad-arithmetic", "duplicate init step");
    }

    if (s.kind == StepKind::Hypothesis) {
      if (s.hyp_index != static_cast<std::int32_t>(next_hyp) ||
          next_hyp >= stmt.hypotheses.size()) {
        return fail(s.id, "bad-arithmetic", "hypothesis steps must cover the statement in order");
      }
      const RankConstraint& c = stmt.hypotheses[next_hyp];
      ++next_hyp;
      if (s.target != c.set) {
        return fail(s.id, "bad-arithmetic", "hypothesis step targets the wrong set");
      }
      if (!s.deps.empty()) {
        return fail(s.id, "bad-arithmetic", "hypothesis steps take no dependencies");
      }
      RankInterval cur{lo[t], hi[t]};
      if (s.before != cur) {
        return fail(s.id, "bad-arithmetic", "recorded old interval differs from replay");
      }
      // The constraint narrows the interval: EQ intersects with (v, v), LE
      // caps hi, GE lifts lo.
      RankInterval next = cur;
      switch (c.relation) {
        case Relation::Eq:
          next.lo = std::max(cur.lo, c.value);
          next.hi = std::min(cur.hi, c.value);
          break;
        case Relation::Le:
          next.hi = std::min(cur.hi, c.value);
          break;
        case Relation::Ge:
          next.lo = std::max(cur.lo, c.value);
          break;
      }
      if (s.after != next) {
        return fail(s.id, "bad-arithmetic", "hypothesis step claims the wrong new interval");
      }
      if (next.lo != cur.lo) {
        lo[t] = next.lo;
        lop[t] = s.id;
      }
      if (next.hi != cur.hi) {
        hi[t] = next.hi;
        hip[t] = s.id;
      }
      if (next.lo > next.hi) {
        crossed = true;
        crossing_set = s.target;
      }
      seen_ids[s.id] = 0;
      continue;
    }

    // Rule step.
    if (s.x == s.y) return fail(s.id, "bad-arithmetic", "rule operands must differ");
    if (s.x.bits >= n || s.y.bits >= n) {
      return fail(s.id, "bad-arithmetic", "operand outside the universe");
    }
    for (std::int32_t d : s.deps) {
      auto it = seen_ids.find(d);
      if (it == seen_ids.end() || d >= s.id) {
        return fail(s.id, "dep-cycle", "dependency " + std::to_string(d) + " is not an earlier step");
      }
    }
    RuleCheck rc = recompute_rule(lo, hi, lop, hip, s.rule, s.x.bits, s.y.bits);
    if (!rc.applicable) {
      return fail(s.id, "bad-arithmetic", "rule preconditions do not hold");
    }
    if (s.target.bits != rc.target) {
      return fail(s.id, "bad-arithmetic", "rule targets the wrong set");
    }
    if (!rc.improves) {
      return fail(s.id, "not-an-improvement", "candidate does not strictly narrow the bound");
    }
    RankInterval cur{lo[t], hi[t]};
    if (s.before != cur) {
      return fail(s.id, "bad-arithmetic", "recorded old interval differs from replay");
    }
    RankInterval expect = rc.lo_bound ? RankInterval{rc.cand, cur.hi} : RankInterval{cur.lo, rc.cand};
    if (s.after != expect) {
      return fail(s.id, "bad-arithmetic", "claimed new interval differs from the rule arithmetic");
    }
    std::vector<std::int32_t> want_deps(rc.deps, rc.deps + rc.ndeps);
    if (s.deps != want_deps) {
      return fail(s.id, "bad-arithmetic", "dependencies differ from the bounds the rule read");
    }
    if (rc.lo_bound) {
      lo[t] = rc.cand;
      lop[t] = s.id;
    } else {
      hi[t] = rc.cand;
      hip[t] = s.id;
    }
    if (lo[t] > hi[t]) {
      crossed = true;
      crossing_set = s.target;
    }
    seen_ids[s.id] = 1;
    ++rule_steps;
  }

  if (!crossed && next_hyp != stmt.hypotheses.size()) {
    return fail(-1, "bad-arithmetic", "not every hypothesis was applied");
  }
  if (crossed != claims_contradiction) {
    return fail(-1, "bad-arithmetic", crossed ? "replay hit a contradiction but the header claims fixpoint"
                                              : "header claims contradiction but none was derived");
  }
  if (rule_steps != cert.header.rule_steps) {
    return fail(-1, "bad-arithmetic", "header rule-step count is wrong");
  }

  // Lemma records must reproduce the canonical grouping and order.
  {
    std::vector<LemmaGroup> groups = group_rule_steps(cert.steps);
    int bottom_group = -1;
    if (crossed) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].goal == crossing_set) bottom_group = static_cast<int>(g);
      }
      if (bottom_group < 0) {
        groups.push_back({crossing_set, {}});
        bottom_group = static_cast<int>(groups.size()) - 1;
      }
    }
    std::vector<std::size_t> order = order_lemmas(groups, cert.steps, bottom_group);
    if (cert.lemmas.size() != order.size()) {
      return fail(-1, "bad-arithmetic", "lemma count differs from the step grouping");
    }
    for (std::size_t li = 0; li < order.size(); ++li) {
      const LemmaGroup& g = groups[order[li]];
      const Lemma& l = cert.lemmas[li];
      if (l.goal != g.goal) {
        return fail(-1, "bad-arithmetic", "lemma " + std::to_string(li) + " is out of order");
      }
      if (l.step_ids != g.step_ids) {
        return fail(-1, "bad-arithmetic", "lemma " + std::to_string(li) + " lists the wrong steps");
      }
      if (l.bound != RankInterval{lo[l.goal.bits], hi[l.goal.bits]}) {
        return fail(-1, "bad-arithmetic", "lemma " + std::to_string(li) + " claims the wrong bound");
      }
      bool want_bottom = crossed && static_cast<int>(order[li]) == bottom_group;
      if (l.bottom != want_bottom) {
        return fail(-1, "bad-arithmetic", "lemma " + std::to_string(li) + " bottom flag is wrong");
      }
      for (std::int32_t sid : l.step_ids) {
        if (cert.lemma_of_step(sid) != static_cast<int>(li)) {
          return fail(sid, "bad-arithmetic", "step cites the wrong lemma");
        }
      }
    }
  }

  // Verdicts: cover the statement's conclusions in order, statuses recomputed.
  if (cert.verdicts.size() != stmt.conclusions.size()) {
    return fail(-1, "verdict-mismatch", "verdict count differs from the conclusions");
  }
  for (std::size_t i = 0; i < cert.verdicts.size(); ++i) {
    const Verdict& v = cert.verdicts[i];
    const RankConstraint& c = stmt.conclusions[i];
    if (v.conclusion != c) {
      return fail(-1, "verdict-mismatch", "verdict " + std::to_string(i) + " restates the conclusion wrongly");
    }
    RankInterval final_iv{lo[c.set.bits], hi[c.set.bits]};
    if (v.interval != final_iv) {
      return fail(-1, "verdict-mismatch", "verdict " + std::to_string(i) + " claims the wrong final interval");
    }
    ConclusionStatus want;
    if (crossed) {
      want = ConclusionStatus::ContradictoryHypotheses;
    } else if (interval_proves(final_iv, c.relation, c.value)) {
      want = ConclusionStatus::Proved;
    } else if (interval_refutes(final_iv, c.relation, c.value)) {
      want = ConclusionStatus::Refuted;
    } else {
      want = ConclusionStatus::Unknown;
    }
    if (v.status != want) {
      return fail(-1, "verdict-mismatch", "verdict " + std::to_string(i) + " claims the wrong status");
    }
  }

  return CheckResult::ok();
}

} // namespace rankprover
