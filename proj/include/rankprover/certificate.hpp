// Certificates: pruned, lemma-decomposed, independently checkable derivations.
//
// A certificate carries, in one JSON record per line:
//   - a header binding it to the statement (SHA-256 of the canonical print),
//   - lemma records grouping the kept rule steps by target set,
//   - every kept derivation step in ascending id order (ids keep the gaps the
//     pruning left, so the original trace positions stay visible),
//   - one verdict record per conclusion.
//
// Extraction back-chains from the conclusion bounds (or the contradiction)
// through step dependencies, keeps the init step and all hypothesis steps, and
// then REPLAYS the kept steps on a fresh table: the recorded old intervals and
// dependencies are the replay's, so the certificate is itself a complete,
// well-founded derivation even after pruning.
//
// The checker never runs the saturation engine. It rebuilds the initial table
// from the statement, re-executes each step's arithmetic with its own copy of
// the eight rule formulas, and compares every claimed number exactly; verdict
// statuses are recomputed from the replayed table. timing_ms is the single
// field taken on faith.
#pragma once

#include "rankprover/core.hpp"
#include "rankprover/engine.hpp"

#include <iosfwd>
#include <string>

namespace rankprover {

inline constexpr int kCertFormatVersion = 1;

struct CertHeader {
  int version = kCertFormatVersion;
  std::string tool;
  int dim = 0;
  std::vector<std::string> points;
  std::string stmt_sha256;
  std::string strategy; // "full" | "worklist"
  std::string outcome;  // "fixpoint" | "contradiction"
  std::size_t rule_steps = 0;
  double timing_ms = 0.0;
  bool deterministic = true;
};

struct Lemma {
  PointSet goal;
  RankInterval bound; // goal's interval once all certificate steps ran
  bool bottom = false; // contradiction lemma (lo > hi crossed on goal)
  std::vector<std::int32_t> step_ids;
};

struct Certificate {
  CertHeader header;
  std::vector<Lemma> lemmas;
  std::vector<TraceStep> steps; // ascending original ids; step.hyp_index used
  std::vector<Verdict> verdicts;
  // lemma index per rule step id (parallel map kept in the step records).
  std::vector<std::pair<std::int32_t, int>> step_lemma;

  int lemma_of_step(std::int32_t id) const;
};

// Builds the pruned certificate from a finished saturation run.
Certificate extract_certificate(const SaturationState& st, const Statement& stmt,
                                const SaturationResult& run, Strategy strategy);

void serialize_certificate(const Certificate& cert, std::ostream& out);
std::string serialize_certificate(const Certificate& cert);

struct CertParseError : std::runtime_error {
  int line;
  CertParseError(int line_, const std::string& msg)
      : std::runtime_error("certificate line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

Certificate parse_certificate(std::istream& in);
Certificate parse_certificate_text(const std::string& text);

struct CheckResult {
  bool valid = true;
  std::int32_t step_id = -1; // first offending step, -1 when not step-specific
  std::string reason;        // bad-arithmetic | not-an-improvement | dep-cycle |
                             // verdict-mismatch | hash-mismatch
  std::string detail;        // human-readable diagnosis

  static CheckResult ok() { return {}; }
};

CheckResult check_certificate(const Certificate& cert, const Statement& stmt);

} // namespace rankprover
