#pragma once

#include <set>
#include <string>
#include <vector>

#include "metaprio/mt.hpp"
#include "metaprio/parallel.hpp"

namespace metaprio::mutation {

// First-order mutation operators:
//   AOR  + <-> -, * <-> / (pairwise; the full arithmetic cross-product
//        including % is available behind GenOptions::aor_full)
//   ROR  each relational operator -> each of the other five
//   LOR  && <-> ||
//   CRP  integer literal c -> c+1 and c -> 0 (identity edits skipped)
//   SDL  delete one assignment or array-write statement
enum class Operator { AOR, ROR, LOR, CRP, SDL };

std::string to_string(Operator op);
Operator operator_from_string(const std::string& s);

enum class MutantStatus { Candidate, ScreenedOut, Viable };

std::string to_string(MutantStatus s);

struct Mutant {
  std::string id;          // m001, m002, ... in (stmt, path, op, variant) order
  Operator op = Operator::AOR;
  int stmt_id = 0;
  std::string path;        // dotted expr-tree path ("1.0.2"), "stmt" for SDL
  std::string variant;     // "+ -> -", "5 -> 0", "delete", ...
  std::string description; // statement before -> after
  lang::Program program;   // mutated program, re-parsed from printed source
  MutantStatus status = MutantStatus::Candidate;
};

struct GenOptions {
  std::set<Operator> operators{Operator::AOR, Operator::ROR, Operator::LOR, Operator::CRP,
                               Operator::SDL};
  bool aor_full = false;
};

// Exhaustive single-edit mutants for the enabled operators. Edits whose
// printed source no longer parses or type-checks (stillborn, e.g. deleting a
// variable's only definition) are dropped. Deterministic: ids follow the
// (statement id, node path, operator, variant) sort order.
std::vector<Mutant> generate_mutants(const lang::Program& p, const GenOptions& opts = {});

// Marks each mutant ScreenedOut or Viable. A mutant is screened out iff every
// (MR, case) verdict on it is an error caused by a runtime fault or the step
// limit — it never produces a checkable output, mirroring the removal of
// mutants that throw or hang. Shape mismatches and ordinary verdicts keep a
// mutant viable.
void screen_mutants(std::vector<Mutant>& mutants, const std::vector<mt::MrSpec>& mrs,
                    const mt::TestSuite& sources, long long step_limit = exec::kDefaultStepLimit,
                    Parallelism par = Parallelism::Serial);

enum class MatrixRole { Prioritizing, Validation };

std::string to_string(MatrixRole r);

struct KillMatrix {
  MatrixRole role = MatrixRole::Prioritizing;
  std::vector<std::string> mr_ids;
  std::vector<std::string> mutant_ids;
  std::vector<std::vector<bool>> kills;   // kills[mr][mutant]
  std::vector<long long> mr_cost_steps;   // per MR, measured on the ORIGINAL program

  int killable_count() const;
  bool killable(std::size_t mutant_col) const;
};

// Runs every MR against every mutant. An MR kills a mutant when any case
// verdict is Violated, or when the mutant errs (runtime fault / step limit)
// on a case whose verdict on the original program was not an error.
// mr_cost_steps comes from running each MR's suite on the original program.
KillMatrix build_kill_matrix(const lang::Program& original, const std::vector<Mutant>& mutants,
                             const std::vector<mt::MrSpec>& mrs, const mt::TestSuite& sources,
                             MatrixRole role, long long step_limit = exec::kDefaultStepLimit,
                             Parallelism par = Parallelism::Serial);

}  // namespace metaprio::mutation
