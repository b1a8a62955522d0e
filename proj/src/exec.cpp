#include "metaprio/exec.hpp"

#include <limits>

namespace metaprio::exec {

using lang::BranchTag;
using lang::Expr;
using lang::ExprKind;
using lang::Function;
using lang::Program;
using lang::Stmt;
using lang::StmtKind;
using lang::ValueType;

Value Value::of_int(long long v) {
  Value out;
  out.type = ValueType::Int;
  out.i = v;
  return out;
}

Value Value::of_bool(bool v) {
  Value out;
  out.type = ValueType::Bool;
  out.b = v;
  return out;
}

Value Value::of_array(std::vector<long long> v) {
  Value out;
  out.type = ValueType::IntArray;
  out.arr = std::move(v);
  return out;
}

std::string to_string(const Value& v) {
  switch (v.type) {
    case ValueType::Int:
      return std::to_string(v.i);
    case ValueType::Bool:
      return v.b ? "true" : "false";
    case ValueType::IntArray: {
      std::string out = "[";
      for (size_t i = 0; i < v.arr.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v.arr[i]);
      }
      return out + "]";
    }
  }
  return "?";
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::RuntimeError: return "runtime-error";
    case RunStatus::StepLimitExceeded: return "step-limit-exceeded";
  }
  return "?";
}

namespace {

// Wrapping two's-complement arithmetic keeps mutant arithmetic deterministic
// without undefined behavior on overflow.
long long wrap_add(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) +
                                static_cast<unsigned long long>(b));
}
long long wrap_sub(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) -
                                static_cast<unsigned long long>(b));
}
long long wrap_mul(long long a, long long b) {
  return static_cast<long long>(static_cast<unsigned long long>(a) *
                                static_cast<unsigned long long>(b));
}

struct Frame {
  std::map<std::string, Value> vars;
};

// Shared evaluator state. The interpreter never throws from the evaluation
// path: the first fault latches into `err`/`limit_hit` and unwinds via
// boolean/Flow returns (keeps the mutant fan-out loops exception-free).
struct Ctx {
  const Program* prog = nullptr;      // null in standalone expression mode
  ExecutionProfile* prof = nullptr;   // null in standalone expression mode
  long long step_limit = kDefaultStepLimit;
  std::string err;
  bool limit_hit = false;

  bool fault(const std::string& message) {
    if (err.empty() && !limit_hit) err = message;
    return false;
  }
};

enum class Flow { Normal, Returned, Fault };

bool eval(Ctx& c, const Expr& e, Frame& f, int depth, Value& out);
Flow exec_block(Ctx& c, const std::vector<Stmt>& block, Frame& f, int depth, Value& ret);

bool call_function(Ctx& c, const Function& fn, std::vector<Value> args, int depth, Value& out) {
  if (depth > kMaxCallDepth) return c.fault("call depth limit exceeded in '" + fn.name + "'");
  Frame frame;
  for (size_t i = 0; i < fn.params.size(); ++i) {
    frame.vars.emplace(fn.params[i].name, std::move(args[i]));
  }
  Value ret;
  Flow flow = exec_block(c, fn.body, frame, depth, ret);
  if (flow == Flow::Fault) return false;
  if (flow != Flow::Returned) return c.fault("function '" + fn.name + "' did not return");
  out = std::move(ret);
  return true;
}

bool eval_int(Ctx& c, const Expr& e, Frame& f, int depth, long long& out) {
  Value v;
  if (!eval(c, e, f, depth, v)) return false;
  out = v.i;
  return true;
}

bool eval(Ctx& c, const Expr& e, Frame& f, int depth, Value& out) {
  switch (e.kind) {
    case ExprKind::IntLit:
      out = Value::of_int(e.int_val);
      return true;
    case ExprKind::BoolLit:
      out = Value::of_bool(e.bool_val);
      return true;
    case ExprKind::Var: {
      auto it = f.vars.find(e.name);
      if (it == f.vars.end()) return c.fault("uninitialized read of '" + e.name + "'");
      out = it->second;
      return true;
    }
    case ExprKind::Index: {
      auto it = f.vars.find(e.name);
      if (it == f.vars.end()) return c.fault("uninitialized read of '" + e.name + "'");
      long long idx;
      if (!eval_int(c, e.kids[0], f, depth, idx)) return false;
      const auto& arr = it->second.arr;
      if (idx < 0 || idx >= static_cast<long long>(arr.size())) {
        return c.fault("index out of bounds: " + e.name + "[" + std::to_string(idx) +
                       "], length " + std::to_string(arr.size()));
      }
      out = Value::of_int(arr[static_cast<size_t>(idx)]);
      return true;
    }
    case ExprKind::Len: {
      Value v;
      if (!eval(c, e.kids[0], f, depth, v)) return false;
      out = Value::of_int(static_cast<long long>(v.arr.size()));
      return true;
    }
    case ExprKind::Call: {
      if (!c.prog) return c.fault("function calls are not available here");
      const Function* callee = c.prog->find_function(e.name);
      if (!callee) return c.fault("call to unknown function '" + e.name + "'");
      std::vector<Value> args;
      args.reserve(e.kids.size());
      for (const auto& k : e.kids) {
        Value v;
        if (!eval(c, k, f, depth, v)) return false;
        args.push_back(std::move(v));
      }
      return call_function(c, *callee, std::move(args), depth + 1, out);
    }
    case ExprKind::Not: {
      Value v;
      if (!eval(c, e.kids[0], f, depth, v)) return false;
      out = Value::of_bool(!v.b);
      return true;
    }
    case ExprKind::Binary: {
      // && and || short-circuit
      if (e.op == lang::BinOp::And || e.op == lang::BinOp::Or) {
        Value lhs;
        if (!eval(c, e.kids[0], f, depth, lhs)) return false;
        if (e.op == lang::BinOp::And && !lhs.b) {
          out = Value::of_bool(false);
          return true;
        }
        if (e.op == lang::BinOp::Or && lhs.b) {
          out = Value::of_bool(true);
          return true;
        }
        Value rhs;
        if (!eval(c, e.kids[1], f, depth, rhs)) return false;
        out = Value::of_bool(rhs.b);
        return true;
      }
      long long a, b;
      if (!eval_int(c, e.kids[0], f, depth, a)) return false;
      if (!eval_int(c, e.kids[1], f, depth, b)) return false;
      switch (e.op) {
        case lang::BinOp::Add: out = Value::of_int(wrap_add(a, b)); return true;
        case lang::BinOp::Sub: out = Value::of_int(wrap_sub(a, b)); return true;
        case lang::BinOp::Mul: out = Value::of_int(wrap_mul(a, b)); return true;
        case lang::BinOp::Div:
          if (b == 0) return c.fault("division by zero");
          if (a == std::numeric_limits<long long>::min() && b == -1) {
            out = Value::of_int(a);  // wraps
            return true;
          }
          out = Value::of_int(a / b);
          return true;
        case lang::BinOp::Mod:
          if (b == 0) return c.fault("modulo by zero");
          if (a == std::numeric_limits<long long>::min() && b == -1) {
            out = Value::of_int(0);
            return true;
          }
          out = Value::of_int(a % b);
          return true;
        case lang::BinOp::Lt: out = Value::of_bool(a < b); return true;
        case lang::BinOp::Le: out = Value::of_bool(a <= b); return true;
        case lang::BinOp::Gt: out = Value::of_bool(a > b); return true;
        case lang::BinOp::Ge: out = Value::of_bool(a >= b); return true;
        case lang::BinOp::Eq: out = Value::of_bool(a == b); return true;
        case lang::BinOp::Ne: out = Value::of_bool(a != b); return true;
        default: return c.fault("malformed operator");
      }
    }
  }
  return c.fault("malformed expression");
}

// Visit bookkeeping for one statement; false when the step budget is gone.
bool visit(Ctx& c, const Stmt& s) {
  if (!c.prof) return true;
  c.prof->statements.insert(s.id);
  ++c.prof->steps;
  if (c.prof->steps > c.step_limit) {
    c.limit_hit = true;
    return false;
  }
  return true;
}

Flow exec_stmt(Ctx& c, const Stmt& s, Frame& f, int depth, Value& ret) {
  if (!visit(c, s)) return Flow::Fault;
  switch (s.kind) {
    case StmtKind::Assign: {
      Value v;
      if (!eval(c, s.expr, f, depth, v)) return Flow::Fault;
      f.vars[s.target] = std::move(v);
      return Flow::Normal;
    }
    case StmtKind::ArrayWrite: {
      auto it = f.vars.find(s.target);
      if (it == f.vars.end()) {
        c.fault("uninitialized read of '" + s.target + "'");
        return Flow::Fault;
      }
      long long idx, val;
      if (!eval_int(c, s.index, f, depth, idx)) return Flow::Fault;
      if (!eval_int(c, s.expr, f, depth, val)) return Flow::Fault;
      auto& arr = it->second.arr;
      if (idx < 0 || idx >= static_cast<long long>(arr.size())) {
        c.fault("index out of bounds: " + s.target + "[" + std::to_string(idx) + "], length " +
                std::to_string(arr.size()));
        return Flow::Fault;
      }
      arr[static_cast<size_t>(idx)] = val;
      return Flow::Normal;
    }
    case StmtKind::If: {
      Value cond;
      if (!eval(c, s.expr, f, depth, cond)) return Flow::Fault;
      if (c.prof) {
        c.prof->branches.emplace(s.id, cond.b ? BranchTag::True : BranchTag::False);
      }
      return exec_block(c, cond.b ? s.body : s.else_body, f, depth, ret);
    }
    case StmtKind::While: {
      while (true) {
        Value cond;
        if (!eval(c, s.expr, f, depth, cond)) return Flow::Fault;
        if (c.prof) {
          c.prof->branches.emplace(s.id, cond.b ? BranchTag::True : BranchTag::False);
        }
        if (!cond.b) return Flow::Normal;
        Flow flow = exec_block(c, s.body, f, depth, ret);
        if (flow != Flow::Normal) return flow;
        if (!visit(c, s)) return Flow::Fault;  // header re-check is a fresh visit
      }
    }
    case StmtKind::Return: {
      Value v;
      if (!eval(c, s.expr, f, depth, v)) return Flow::Fault;
      ret = std::move(v);
      return Flow::Returned;
    }
    case StmtKind::Call: {
      Value ignored;
      if (!eval(c, s.expr, f, depth, ignored)) return Flow::Fault;
      return Flow::Normal;
    }
  }
  c.fault("malformed statement");
  return Flow::Fault;
}

Flow exec_block(Ctx& c, const std::vector<Stmt>& block, Frame& f, int depth, Value& ret) {
  for (const auto& s : block) {
    Flow flow = exec_stmt(c, s, f, depth, ret);
    if (flow != Flow::Normal) return flow;
  }
  return Flow::Normal;
}

}  // namespace

ExecutionProfile execute(const Program& p, const std::string& entry,
                         const std::vector<Value>& args, long long step_limit,
                         const std::string& test_id) {
  const Function& fn = p.function(entry);
  if (args.size() != fn.params.size()) {
    throw lang::TypeError("entry '" + entry + "' takes " + std::to_string(fn.params.size()) +
                              " argument(s), got " + std::to_string(args.size()),
                          {});
  }
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].type != fn.params[i].type) {
      throw lang::TypeError("argument " + std::to_string(i + 1) + " of '" + entry +
                                "' expects " + to_string(fn.params[i].type) + ", got " +
                                to_string(args[i].type),
                            {});
    }
  }

  ExecutionProfile prof;
  prof.test_id = test_id;
  prof.program_digest = p.source_digest;

  Ctx c;
  c.prog = &p;
  c.prof = &prof;
  c.step_limit = step_limit;

  Value out;
  bool ok = call_function(c, fn, args, /*depth=*/0, out);
  if (ok) {
    prof.status = RunStatus::Ok;
    prof.output = std::move(out);
  } else if (c.limit_hit) {
    prof.status = RunStatus::StepLimitExceeded;
    prof.error = "step limit of " + std::to_string(step_limit) + " exceeded";
  } else {
    prof.status = RunStatus::RuntimeError;
    prof.error = c.err;
  }
  return prof;
}

CoverageUnion coverage_union(const std::vector<ExecutionProfile>& profiles) {
  CoverageUnion u;
  for (const auto& p : profiles) {
    if (u.program_digest.empty()) {
      u.program_digest = p.program_digest;
    } else if (u.program_digest != p.program_digest) {
      throw MixedProgramDigestError("profiles come from different programs: " +
                                    u.program_digest + " vs " + p.program_digest);
    }
    u.statements.insert(p.statements.begin(), p.statements.end());
    u.branches.insert(p.branches.begin(), p.branches.end());
  }
  return u;
}

EvalOutcome evaluate_expression(const lang::Expr& e, const std::map<std::string, Value>& bindings) {
  Ctx c;  // no program, no profile: pure expression mode
  Frame f;
  f.vars = bindings;
  EvalOutcome out;
  Value v;
  if (eval(c, e, f, /*depth=*/0, v)) {
    out.ok = true;
    out.value = std::move(v);
  } else {
    out.error = c.err;
  }
  return out;
}

}  // namespace metaprio::exec
