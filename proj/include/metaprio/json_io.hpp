#pragma once

#include <string>
#include <vector>

#include "metaprio/evaluate.hpp"
#include "metaprio/mt.hpp"
#include "metaprio/mutation.hpp"
#include "metaprio/prioritize.hpp"

// All artifacts are JSON: UTF-8, keys sorted, two-space indent, LF endings,
// one trailing newline. Rationals travel as fixed-point decimal strings
// (six fractional digits unless stated otherwise) so files stay byte-stable
// across platforms and reruns. Loaders validate shape and report problems
// with a $.path[3].to.the.field location.

namespace metaprio::io {

struct ConfigError : lang::Error {
  using Error::Error;
};

// -- files ------------------------------------------------------------------
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);  // mkdir -p included
std::string digest(const std::string& content);

// -- test suites ------------------------------------------------------------
mt::TestSuite load_test_suite(const std::string& path);
std::string test_suite_json(const mt::TestSuite& s);

// -- MR catalogs -------------------------------------------------------------
std::vector<mt::MrSpec> load_mrs(const std::string& path);
std::string mrs_json(const std::vector<mt::MrSpec>& mrs);

// -- execution profiles (one per test case) ----------------------------------
std::string profiles_json(const std::vector<exec::ExecutionProfile>& profiles,
                          const std::string& program_digest);

// -- per-MR run records (verdicts + coverage union + step cost) --------------
std::string mr_runs_json(const std::vector<mt::MrRunResult>& runs,
                         const std::string& program_digest);
std::vector<mt::MrRunResult> load_mr_runs(const std::string& path);

// -- static analysis (CFG + dependence edges per function) -------------------
std::string analysis_json(const lang::Program& p);

// -- mutants (carry printed source so matrices can be rebuilt from the file) -
std::string mutants_json(const lang::Program& original, const std::vector<mutation::Mutant>& ms);
std::vector<mutation::Mutant> load_mutants(const std::string& path);

// -- kill matrices ------------------------------------------------------------
std::string kill_matrix_json(const mutation::KillMatrix& km);
mutation::KillMatrix load_kill_matrix(const std::string& path);

// -- centrality scores ---------------------------------------------------------
std::string scores_json(const std::vector<centrality::ScoreBreakdown>& scores,
                        const std::string& program_digest);
std::vector<centrality::ScoreBreakdown> load_scores(const std::string& path);

// -- orderings -----------------------------------------------------------------
std::string ordering_json(const prioritize::Ordering& o);
prioritize::Ordering load_ordering(const std::string& path);

// -- evaluation reports ----------------------------------------------------------
std::string report_json(const evaluate::EvaluationReport& rep);
std::string baseline_json(const evaluate::BaselineAverage& avg);
std::string curve_csv(const std::vector<Rational>& curve);

}  // namespace metaprio::io
