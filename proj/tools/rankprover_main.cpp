// Command-line front end: prove / check / refute / rank over statement files.
//
// Exit codes
//   prove:  0 every conclusion proved; 1 some conclusion unknown or refuted;
//           2 contradictory hypotheses; 3 resource limit; 4 usage or input error
//   check:  0 certificate valid; 1 invalid (including malformed); 4 usage
//   refute: 0 countermodel found; 1 none found (not a proof); 4 usage
//   rank:   0 table written; 2 contradictory hypotheses; 3 resource limit; 4 usage
#include "rankprover/certificate.hpp"
#include "rankprover/core.hpp"
#include "rankprover/engine.hpp"
#include "rankprover/oracle.hpp"
#include "rankprover/parser.hpp"
#include "rankprover/version.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace rankprover;

constexpr int kExitAllProved = 0;
constexpr int kExitNotProved = 1;
constexpr int kExitContradiction = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 4;

struct CommonOpts {
  std::string input;
  int dim = kDefaultDimension; // fallback when the file has no dimension line
  std::string strategy = "worklist";
  int max_points = kDefaultMaxPoints;
  double max_seconds = 0.0;
  int verbosity = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("statement", o.input, "statement file (.stmt)")->required();
  cmd->add_option("--dim", o.dim,
                  "dimension for files without a dimension line (a declaration in "
                  "the file wins)")
      ->check(CLI::Range(kMinDimension, kMaxDimension));
  cmd->add_option("--strategy", o.strategy, "saturation strategy")
      ->check(CLI::IsMember({"full", "worklist"}));
  cmd->add_option("--max-points", o.max_points, "point-count cap, enforced before any table allocation")
      ->check(CLI::Range(1, kMaxPointsLimit))
      ->envname("RANKPROVER_MAX_POINTS");
  cmd->add_option("--max-seconds", o.max_seconds, "wall-clock budget for saturation (0 = unlimited)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("-v,--verbose", o.verbosity, "progress details on stderr (repeat for more)");
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Parses the statement file or reports on stderr and exits via return code.
std::optional<ParsedStatement> load_statement(const CommonOpts& o) {
  try {
    return parse_statement_file(o.input, o.dim, o.max_points);
  } catch (const ParseError& e) {
    std::cerr << "error: " << o.input << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return std::nullopt;
}

void print_run_stats(const SaturationResult& run, const SaturationState& st, int verbosity) {
  if (verbosity < 1) return;
  std::cerr << "saturation: " << outcome_name(run.outcome) << ", " << run.passes << " passes, "
            << run.rule_applications << " rule applications, " << st.trace.size()
            << " trace steps\n";
  if (verbosity >= 2) {
    std::size_t determined = 0;
    for (std::size_t s = 0; s < st.universe.table_size(); ++s) {
      if (st.lo[s] == st.hi[s]) ++determined;
    }
    std::cerr << "table: " << determined << " / " << st.universe.table_size()
              << " sets fully determined\n";
  }
}

int cmd_prove(const CommonOpts& o, const std::string& cert_path, const std::string& ranks_path) {
  auto parsed = load_statement(o);
  if (!parsed) return kExitUsage;
  const Statement& stmt = parsed->statement;

  SaturationState st = init_state(stmt);
  Strategy strat = *strategy_from_name(o.strategy);
  SaturationResult run = saturate(st, strat, EngineLimits{o.max_seconds});
  print_run_stats(run, st, o.verbosity);
  if (run.outcome == SaturationOutcome::ResourceLimit) {
    std::cerr << "error: saturation stopped at the " << o.max_seconds
              << "s budget; no verdict\n";
    return kExitResource;
  }

  std::vector<Verdict> verdicts = decide(st, stmt);
  for (const Verdict& v : verdicts) {
    std::cout << print_constraint(stmt.universe, v.conclusion) << "  "
              << upper(status_name(v.status));
    if (v.status != ConclusionStatus::ContradictoryHypotheses) {
      std::cout << "  [rank in " << v.interval.lo << ".." << v.interval.hi << "]";
    }
    std::cout << "\n";
  }
  if (st.contradictory()) {
    const TraceStep& cs = st.trace[st.contradiction_step];
    std::cout << "hypotheses are contradictory: rk("
              << stmt.universe.set_name(*st.contradiction_set) << ") crossed at step "
              << cs.id << "\n";
  }
  std::cout << "time: " << run.elapsed_ms << " ms (" << outcome_name(run.outcome) << ", "
            << run.rule_applications << " rule applications)\n";

  if (!cert_path.empty()) {
    Certificate cert = extract_certificate(st, stmt, run, strat);
    std::ofstream out(cert_path);
    if (!out) {
      std::cerr << "error: cannot write " << cert_path << "\n";
      return kExitUsage;
    }
    serialize_certificate(cert, out);
    if (o.verbosity >= 1) {
      std::cerr << "certificate: " << cert.header.rule_steps << " rule steps, "
                << cert.lemmas.size() << " lemmas -> " << cert_path << "\n";
    }
  }
  if (!ranks_path.empty()) {
    std::ofstream out(ranks_path);
    if (!out) {
      std::cerr << "error: cannot write " << ranks_path << "\n";
      return kExitUsage;
    }
    dump_rank_table(st, out);
  }

  if (st.contradictory()) return kExitContradiction;
  for (const Verdict& v : verdicts) {
    if (v.status != ConclusionStatus::Proved) return kExitNotProved;
  }
  return kExitAllProved;
}

int cmd_check(const std::string& cert_path, const CommonOpts& o) {
  auto parsed = load_statement(o);
  if (!parsed) return kExitUsage;
  const Statement& stmt = parsed->statement;

  std::ifstream in(cert_path);
  if (!in) {
    std::cerr << "error: cannot read " << cert_path << "\n";
    return kExitUsage;
  }
  Certificate cert;
  try {
    cert = parse_certificate(in);
  } catch (const CertParseError& e) {
    std::cout << "INVALID (malformed): " << e.what() << "\n";
    return kExitNotProved;
  }

  CheckResult res = check_certificate(cert, stmt);
  if (res.valid) {
    std::cout << "VALID: " << cert.header.rule_steps << " rule steps, " << cert.lemmas.size()
              << " lemmas, " << cert.verdicts.size() << " verdicts\n";
    return 0;
  }
  std::cout << "INVALID (" << res.reason << ") at step " << res.step_id << ": " << res.detail
            << "\n";
  return 1;
}

int cmd_refute(const CommonOpts& o, const std::string& model_name, std::uint64_t budget,
               std::uint64_t seed) {
  auto parsed = load_statement(o);
  if (!parsed) return kExitUsage;
  const Statement& stmt = parsed->statement;
  const PointUniverse& u = stmt.universe;

  std::vector<int> fields = {2};
  if (model_name == "pg3") fields.push_back(3);

  bool any_model = false;
  bool any_exhausted = false;
  for (int q : fields) {
    ProjectiveModel model;
    try {
      model = make_model(q, u.dimension);
    } catch (const std::exception& e) {
      std::cerr << "note: PG(" << u.dimension << "," << q << ") unavailable: " << e.what()
                << "\n";
      continue;
    }
    any_model = true;
    CountermodelResult res = search_countermodel(stmt, model, budget, seed);
    if (o.verbosity >= 1) {
      std::cerr << "PG(" << u.dimension << "," << q << "): " << res.nodes << " nodes, "
                << (res.found      ? "countermodel found"
                    : res.exhausted ? "space exhausted"
                                    : "budget-bounded")
                << "\n";
    }
    if (res.found) {
      std::cout << "disproved: countermodel in PG(" << u.dimension << "," << q << ")\n";
      for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& coords = model.points[res.assignment[i]];
        std::cout << "  " << u.names[i] << " = (";
        for (int c = 0; c < model.coord_count(); ++c) {
          if (c) std::cout << ",";
          std::cout << int(coords[c]);
        }
        std::cout << ")\n";
      }
      std::cout << "violates: "
                << print_constraint(u, stmt.conclusions[res.violated_conclusion]) << "\n";
      return 0;
    }
    any_exhausted = any_exhausted || res.exhausted;
  }
  if (!any_model) {
    std::cerr << "error: no projective model available for dimension " << u.dimension << "\n";
    return kExitUsage;
  }
  std::cout << "no countermodel found (not a proof)";
  if (any_exhausted) std::cout << " [model space exhausted]";
  std::cout << "\n";
  return 1;
}

int cmd_rank(const CommonOpts& o, const std::string& ranks_path) {
  auto parsed = load_statement(o);
  if (!parsed) return kExitUsage;
  const Statement& stmt = parsed->statement;

  SaturationState st = init_state(stmt);
  SaturationResult run = saturate(st, *strategy_from_name(o.strategy), EngineLimits{o.max_seconds});
  print_run_stats(run, st, o.verbosity);
  if (run.outcome == SaturationOutcome::ResourceLimit) {
    std::cerr << "error: saturation stopped at the " << o.max_seconds << "s budget\n";
    return kExitResource;
  }
  if (run.outcome == SaturationOutcome::Contradiction) {
    std::cerr << "error: hypotheses are contradictory; no consistent rank table\n";
    return kExitContradiction;
  }

  std::size_t determined = 0;
  const std::size_t total = stmt.universe.table_size();
  for (std::size_t s = 0; s < total; ++s) {
    if (st.lo[s] == st.hi[s]) ++determined;
  }

  if (!ranks_path.empty()) {
    std::ofstream out(ranks_path);
    if (!out) {
      std::cerr << "error: cannot write " << ranks_path << "\n";
      return kExitUsage;
    }
    dump_rank_table(st, out);
    std::cout << "fully determined: " << determined << " / " << total << " sets\n";
  } else {
    dump_rank_table(st, std::cout);
    std::cerr << "fully determined: " << determined << " / " << total << " sets\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(rankprover::kToolName) + " " + rankprover::kToolVersion +
               ": saturation prover for projective rank statements"};
  app.require_subcommand(1);

  CommonOpts prove_opts;
  std::string cert_path, prove_ranks_path;
  CLI::App* prove = app.add_subcommand("prove", "saturate a statement and report verdicts");
  add_common(prove, prove_opts);
  prove->add_option("--cert", cert_path, "write a derivation certificate (JSONL)");
  prove->add_option("--ranks", prove_ranks_path, "write the full rank-interval table");

  CommonOpts check_opts;
  std::string check_cert;
  CLI::App* check = app.add_subcommand("check", "verify a certificate against a statement");
  add_common(check, check_opts);
  check->add_option("certificate", check_cert, "certificate file (JSONL)")->required();

  CommonOpts refute_opts;
  std::string model_name = "pg2";
  std::uint64_t budget = 5'000'000;
  std::uint64_t seed = 0;
  CLI::App* refute = app.add_subcommand("refute", "search small projective spaces for a countermodel");
  add_common(refute, refute_opts);
  refute->add_option("--model", model_name, "largest coordinate field to try (pg3 tries GF(2) then GF(3))")
      ->check(CLI::IsMember({"pg2", "pg3"}));
  refute->add_option("--budget", budget, "search-node budget per model")
      ->check(CLI::PositiveNumber);
  refute->add_option("--seed", seed, "seed for randomized value ordering on large statements");

  CommonOpts rank_opts;
  std::string rank_ranks_path;
  CLI::App* rank = app.add_subcommand("rank", "saturate and dump the full rank-interval table");
  add_common(rank, rank_opts);
  rank->add_option("--ranks", rank_ranks_path, "table destination (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (prove->parsed()) {
      if (!cert_path.empty() &&
          (cert_path == prove_opts.input || cert_path == prove_ranks_path)) {
        std::cerr << "error: output paths must be distinct from the input and each other\n";
        return kExitUsage;
      }
      if (!prove_ranks_path.empty() && prove_ranks_path == prove_opts.input) {
        std::cerr << "error: output paths must be distinct from the input and each other\n";
        return kExitUsage;
      }
      return cmd_prove(prove_opts, cert_path, prove_ranks_path);
    }
    if (check->parsed()) return cmd_check(check_cert, check_opts);
    if (refute->parsed()) return cmd_refute(refute_opts, model_name, budget, seed);
    if (rank->parsed()) {
      if (!rank_ranks_path.empty() && rank_ranks_path == rank_opts.input) {
        std::cerr << "error: output paths must be distinct from the input\n";
        return kExitUsage;
      }
      return cmd_rank(rank_opts, rank_ranks_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
