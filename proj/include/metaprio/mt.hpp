#pragma once

#include <string>
#include <vector>

#include "metaprio/exec.hpp"

namespace metaprio::mt {

// Input transformation from the fixed catalog. `arg` selects which argument
// of the entry function is transformed (it must be an int array); remaining
// arguments pass through untouched.
//   permute(seed)      deterministic shuffle
//   reverse            element order reversed
//   scale_elements(k)  every element multiplied by k
//   add_constant(c)    every element shifted by c
//   duplicate_all      the array concatenated with itself
//   append(v)          one element v appended
//   remove_first       first element dropped
//   negate_elements    every element negated
struct Transform {
  std::string name;
  long long k = 0;             // k / c / v, depending on the transform
  std::uint64_t seed = 0;      // permute only
  int arg = 0;
};

// Output predicate over the source output o_s and follow-up output o_f.
//   eq                 o_f == o_s   (int or bool outputs)
//   eq_scaled(k)       o_f == k * o_s
//   eq_offset(expr)    o_f == o_s + expr, expr an int expression over n
//   le                 o_f <= o_s
//   ge                 o_f >= o_s
//   custom(expr)       expr a boolean expression over o_s, o_f, n
// n is the length of the transformed (source) array argument.
struct Relation {
  std::string name;
  long long k = 0;             // eq_scaled factor
  std::string expr;            // eq_offset / custom source text
};

struct MrSpec {
  std::string id;
  Transform transform;
  Relation relation;
};

enum class SuiteRole {
  PrioritizingSource,
  PrioritizingFollowup,
  ValidationSource,
  ValidationFollowup,
};

std::string to_string(SuiteRole r);

struct TestCase {
  std::string id;
  std::string entry;
  std::vector<exec::Value> args;
};

struct TestSuite {
  SuiteRole role = SuiteRole::PrioritizingSource;
  std::vector<TestCase> cases;
};

enum class VerdictKind { Satisfied, Violated, Error };

std::string to_string(VerdictKind v);

// Why a verdict is Error. RuntimeError / StepLimit matter downstream: mutant
// screening only discards mutants whose every verdict failed for one of those
// two reasons.
enum class ErrorCause { None, RuntimeError, StepLimit, ShapeMismatch };

std::string to_string(ErrorCause c);

struct Verdict {
  VerdictKind kind = VerdictKind::Satisfied;
  ErrorCause cause = ErrorCause::None;
};

struct MrRunResult {
  std::string mr_id;
  std::vector<Verdict> verdicts;   // parallel to the source suite's cases
  exec::CoverageUnion coverage;    // union over source + follow-up profiles
  long long cost_steps = 0;        // total interpreter steps across all runs
};

struct ShapeMismatchError : lang::Error {
  using Error::Error;
};

struct TypeMismatchError : lang::Error {
  using Error::Error;
};

// Applies the transform to one argument list. Throws ShapeMismatchError when
// the selected argument is missing or not an array (remove_first on an empty
// array also mismatches).
std::vector<exec::Value> derive_followup(const std::vector<exec::Value>& source_args,
                                         const Transform& t);

// Checks the output predicate for two non-error outputs. n = length of the
// transformed source array. Throws TypeMismatchError when output types do not
// fit the relation. A runtime fault inside a custom/offset expression counts
// as Violated (the predicate did not hold).
VerdictKind check_relation(const exec::Value& o_s, const exec::Value& o_f, const Relation& r,
                           long long n);

// Runs every source case and its derived follow-up against `p`, collecting
// verdicts, the coverage union, and the summed step cost.
MrRunResult run_mr(const lang::Program& p, const MrSpec& mr, const TestSuite& sources,
                   long long step_limit = exec::kDefaultStepLimit);

}  // namespace metaprio::mt
