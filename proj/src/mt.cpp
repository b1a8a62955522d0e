#include "metaprio/mt.hpp"

#include "metaprio/parser.hpp"
#include "metaprio/rng.hpp"

namespace metaprio::mt {

using exec::Value;
using lang::ValueType;

std::string to_string(SuiteRole r) {
  switch (r) {
    case SuiteRole::PrioritizingSource: return "prioritizing_source";
    case SuiteRole::PrioritizingFollowup: return "prioritizing_followup";
    case SuiteRole::ValidationSource: return "validation_source";
    case SuiteRole::ValidationFollowup: return "validation_followup";
  }
  return "?";
}

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Satisfied: return "satisfied";
    case VerdictKind::Violated: return "violated";
    case VerdictKind::Error: return "error";
  }
  return "?";
}

std::string to_string(ErrorCause c) {
  switch (c) {
    case ErrorCause::None: return "none";
    case ErrorCause::RuntimeError: return "runtime-error";
    case ErrorCause::StepLimit: return "step-limit";
    case ErrorCause::ShapeMismatch: return "shape-mismatch";
  }
  return "?";
}

std::vector<Value> derive_followup(const std::vector<Value>& source_args, const Transform& t) {
  if (t.arg < 0 || t.arg >= static_cast<int>(source_args.size())) {
    throw ShapeMismatchError("transform argument index " + std::to_string(t.arg) +
                             " out of range for " + std::to_string(source_args.size()) +
                             " argument(s)");
  }
  if (source_args[static_cast<size_t>(t.arg)].type != ValueType::IntArray) {
    throw ShapeMismatchError("transform '" + t.name + "' needs an array argument");
  }
  std::vector<Value> out = source_args;
  std::vector<long long>& a = out[static_cast<size_t>(t.arg)].arr;

  if (t.name == "permute") {
    std::mt19937_64 gen(t.seed);
    shuffle_deterministic(a, gen);
  } else if (t.name == "reverse") {
    std::reverse(a.begin(), a.end());
  } else if (t.name == "scale_elements") {
    for (auto& x : a) x *= t.k;
  } else if (t.name == "add_constant") {
    for (auto& x : a) x += t.k;
  } else if (t.name == "duplicate_all") {
    std::vector<long long> twice = a;
    twice.insert(twice.end(), a.begin(), a.end());
    a = std::move(twice);
  } else if (t.name == "append") {
    a.push_back(t.k);
  } else if (t.name == "remove_first") {
    if (a.empty()) throw ShapeMismatchError("remove_first on an empty array");
    a.erase(a.begin());
  } else if (t.name == "negate_elements") {
    for (auto& x : a) x = -x;
  } else {
    throw ShapeMismatchError("unknown transform '" + t.name + "'");
  }
  return out;
}

namespace {

long long as_int(const Value& v, const char* side) {
  if (v.type != ValueType::Int) {
    throw TypeMismatchError(std::string(side) + " output is " + to_string(v.type) +
                            ", relation needs int");
  }
  return v.i;
}

VerdictKind from_bool(bool ok) { return ok ? VerdictKind::Satisfied : VerdictKind::Violated; }

}  // namespace

VerdictKind check_relation(const Value& o_s, const Value& o_f, const Relation& r, long long n) {
  if (r.name == "eq") {
    if (o_s.type != o_f.type) {
      throw TypeMismatchError("eq outputs differ in type: " + to_string(o_s.type) + " vs " +
                              to_string(o_f.type));
    }
    return from_bool(o_s == o_f);
  }
  if (r.name == "eq_scaled") {
    return from_bool(as_int(o_f, "follow-up") == r.k * as_int(o_s, "source"));
  }
  if (r.name == "le") {
    return from_bool(as_int(o_f, "follow-up") <= as_int(o_s, "source"));
  }
  if (r.name == "ge") {
    return from_bool(as_int(o_f, "follow-up") >= as_int(o_s, "source"));
  }
  if (r.name == "eq_offset") {
    long long fs = as_int(o_s, "source");
    long long ff = as_int(o_f, "follow-up");
    lang::Expr e = lang::parse_expression(r.expr, {{"n", ValueType::Int}}, ValueType::Int);
    auto offset = exec::evaluate_expression(e, {{"n", Value::of_int(n)}});
    if (!offset.ok) return VerdictKind::Violated;  // faulting predicate cannot hold
    return from_bool(ff == fs + offset.value.i);
  }
  if (r.name == "custom") {
    long long fs = as_int(o_s, "source");
    long long ff = as_int(o_f, "follow-up");
    lang::Expr e = lang::parse_expression(
        r.expr,
        {{"o_s", ValueType::Int}, {"o_f", ValueType::Int}, {"n", ValueType::Int}},
        ValueType::Bool);
    auto res = exec::evaluate_expression(
        e, {{"o_s", Value::of_int(fs)}, {"o_f", Value::of_int(ff)}, {"n", Value::of_int(n)}});
    if (!res.ok) return VerdictKind::Violated;
    return from_bool(res.value.b);
  }
  throw TypeMismatchError("unknown relation '" + r.name + "'");
}

MrRunResult run_mr(const lang::Program& p, const MrSpec& mr, const TestSuite& sources,
                   long long step_limit) {
  MrRunResult out;
  out.mr_id = mr.id;
  std::vector<exec::ExecutionProfile> profiles;
  profiles.reserve(sources.cases.size() * 2);

  for (const auto& tc : sources.cases) {
    Verdict v;
    auto src = exec::execute(p, tc.entry, tc.args, step_limit, tc.id);
    profiles.push_back(src);

    std::vector<Value> fargs;
    bool derived = false;
    try {
      fargs = derive_followup(tc.args, mr.transform);
      derived = true;
    } catch (const ShapeMismatchError&) {
      v.kind = VerdictKind::Error;
      v.cause = ErrorCause::ShapeMismatch;
    }

    if (derived) {
      auto fup = exec::execute(p, tc.entry, fargs, step_limit, tc.id + "~" + mr.id);
      profiles.push_back(fup);

      auto cause_of = [](exec::RunStatus s) {
        return s == exec::RunStatus::StepLimitExceeded ? ErrorCause::StepLimit
                                                       : ErrorCause::RuntimeError;
      };
      if (src.status != exec::RunStatus::Ok) {
        v.kind = VerdictKind::Error;
        v.cause = cause_of(src.status);
      } else if (fup.status != exec::RunStatus::Ok) {
        v.kind = VerdictKind::Error;
        v.cause = cause_of(fup.status);
      } else {
        long long n =
            static_cast<long long>(tc.args[static_cast<size_t>(mr.transform.arg)].arr.size());
        v.kind = check_relation(src.output, fup.output, mr.relation, n);
      }
    }
    out.verdicts.push_back(v);
  }
  out.coverage = exec::coverage_union(profiles);
  for (const auto& prof : profiles) out.cost_steps += prof.steps;
  return out;
}

}  // namespace metaprio::mt
