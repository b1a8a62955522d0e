#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metaprio/ast.hpp"
#include "metaprio/cfg.hpp"

namespace metaprio::exec {

inline constexpr long long kDefaultStepLimit = 1'000'000;
inline constexpr int kMaxCallDepth = 256;

struct Value {
  lang::ValueType type = lang::ValueType::Int;
  long long i = 0;
  bool b = false;
  std::vector<long long> arr;

  static Value of_int(long long v);
  static Value of_bool(bool v);
  static Value of_array(std::vector<long long> v);

  friend bool operator==(const Value&, const Value&) = default;
};

std::string to_string(const Value& v);

// Terminal state of one run. RuntimeError covers division/modulo by zero,
// index out of bounds, uninitialized variable reads, and call-depth blowout;
// StepLimitExceeded marks runs that did not finish within the budget.
enum class RunStatus { Ok, RuntimeError, StepLimitExceeded };

std::string to_string(RunStatus s);

struct ExecutionProfile {
  std::string test_id;
  std::string program_digest;
  std::set<int> statements;                             // executed at least once
  std::set<std::pair<int, lang::BranchTag>> branches;   // (if/while id, taken tag)
  long long steps = 0;                                  // statement-node visits
  RunStatus status = RunStatus::Ok;
  std::string error;      // populated when status != Ok
  Value output;           // populated when status == Ok
};

// Runs `entry` with `args`. Runtime faults and step-limit blowouts come back
// as markers in the profile (statements up to the fault recorded), never as
// exceptions. Throws lang::TypeError for arity/type mismatches against the
// entry signature and lang::UnknownFunctionError for a missing entry.
ExecutionProfile execute(const lang::Program& p, const std::string& entry,
                         const std::vector<Value>& args,
                         long long step_limit = kDefaultStepLimit,
                         const std::string& test_id = "");

struct MixedProgramDigestError : lang::Error {
  using Error::Error;
};

struct CoverageUnion {
  std::string program_digest;
  std::set<int> statements;
  std::set<std::pair<int, lang::BranchTag>> branches;
};

// Union of statement/branch sets. All profiles must come from the same
// program (digest check) or MixedProgramDigestError is thrown.
CoverageUnion coverage_union(const std::vector<ExecutionProfile>& profiles);

// Evaluates a standalone expression over the given bindings (no function
// calls available). Used for custom output predicates. status is Ok or
// RuntimeError; steps/coverage are not tracked.
struct EvalOutcome {
  bool ok = false;
  Value value;
  std::string error;
};

EvalOutcome evaluate_expression(const lang::Expr& e, const std::map<std::string, Value>& bindings);

}  // namespace metaprio::exec
