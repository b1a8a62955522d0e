#include "metaprio/mutation.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <optional>

#include "metaprio/parser.hpp"
#include "metaprio/printer.hpp"

namespace metaprio::mutation {

using lang::BinOp;
using lang::Expr;
using lang::ExprKind;
using lang::Program;
using lang::Stmt;
using lang::StmtKind;

std::string to_string(Operator op) {
  switch (op) {
    case Operator::AOR: return "AOR";
    case Operator::ROR: return "ROR";
    case Operator::LOR: return "LOR";
    case Operator::CRP: return "CRP";
    case Operator::SDL: return "SDL";
  }
  return "?";
}

Operator operator_from_string(const std::string& s) {
  if (s == "AOR") return Operator::AOR;
  if (s == "ROR") return Operator::ROR;
  if (s == "LOR") return Operator::LOR;
  if (s == "CRP") return Operator::CRP;
  if (s == "SDL") return Operator::SDL;
  throw lang::Error("unknown mutation operator '" + s + "'");
}

std::string to_string(MutantStatus s) {
  switch (s) {
    case MutantStatus::Candidate: return "candidate";
    case MutantStatus::ScreenedOut: return "screened_out";
    case MutantStatus::Viable: return "viable";
  }
  return "?";
}

std::string to_string(MatrixRole r) {
  return r == MatrixRole::Prioritizing ? "prioritizing" : "validation";
}

namespace {

struct Edit {
  enum class Kind { SetOp, SetLit, DeleteStmt };
  Operator op = Operator::AOR;
  int stmt_id = 0;
  std::vector<int> path;  // path[0] = expression slot, rest = child indices
  std::string variant;
  Kind kind = Kind::SetOp;
  BinOp new_op = BinOp::Add;
  long long new_lit = 0;
};

std::string path_str(const std::vector<int>& path) {
  if (path.empty()) return "stmt";
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

const std::vector<BinOp> kArith{BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod};
const std::vector<BinOp> kRel{BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne};

std::optional<BinOp> aor_pair(BinOp op) {
  switch (op) {
    case BinOp::Add: return BinOp::Sub;
    case BinOp::Sub: return BinOp::Add;
    case BinOp::Mul: return BinOp::Div;
    case BinOp::Div: return BinOp::Mul;
    default: return std::nullopt;  // % pairs with nothing in pairwise mode
  }
}

void collect_expr_edits(const Expr& e, int stmt_id, std::vector<int>& path,
                        const GenOptions& opts, std::vector<Edit>& out) {
  auto add_op_edit = [&](Operator op, BinOp to) {
    Edit ed;
    ed.op = op;
    ed.stmt_id = stmt_id;
    ed.path = path;
    ed.kind = Edit::Kind::SetOp;
    ed.new_op = to;
    ed.variant = lang::to_string(e.op) + " -> " + lang::to_string(to);
    out.push_back(std::move(ed));
  };

  if (e.kind == ExprKind::Binary) {
    if (lang::is_arith(e.op) && opts.operators.count(Operator::AOR)) {
      if (opts.aor_full) {
        for (BinOp to : kArith) {
          if (to != e.op) add_op_edit(Operator::AOR, to);
        }
      } else if (auto to = aor_pair(e.op)) {
        add_op_edit(Operator::AOR, *to);
      }
    }
    if (lang::is_rel(e.op) && opts.operators.count(Operator::ROR)) {
      for (BinOp to : kRel) {
        if (to != e.op) add_op_edit(Operator::ROR, to);
      }
    }
    if (lang::is_logic(e.op) && opts.operators.count(Operator::LOR)) {
      add_op_edit(Operator::LOR, e.op == BinOp::And ? BinOp::Or : BinOp::And);
    }
  }
  if (e.kind == ExprKind::IntLit && opts.operators.count(Operator::CRP)) {
    auto add_lit_edit = [&](long long to) {
      Edit ed;
      ed.op = Operator::CRP;
      ed.stmt_id = stmt_id;
      ed.path = path;
      ed.kind = Edit::Kind::SetLit;
      ed.new_lit = to;
      ed.variant = std::to_string(e.int_val) + " -> " + std::to_string(to);
      out.push_back(std::move(ed));
    };
    if (e.int_val < std::numeric_limits<long long>::max()) add_lit_edit(e.int_val + 1);
    if (e.int_val != 0) add_lit_edit(0);
  }

  for (size_t i = 0; i < e.kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_expr_edits(e.kids[i], stmt_id, path, opts, out);
    path.pop_back();
  }
}

// Expression slots of a statement: ArrayWrite has [index, rhs]; everything
// else has its single expr in slot 0.
std::vector<const Expr*> expr_slots(const Stmt& s) {
  if (s.kind == StmtKind::ArrayWrite) return {&s.index, &s.expr};
  return {&s.expr};
}

std::vector<Expr*> expr_slots(Stmt& s) {
  if (s.kind == StmtKind::ArrayWrite) return {&s.index, &s.expr};
  return {&s.expr};
}

std::vector<Edit> collect_edits(const Program& p, const GenOptions& opts) {
  std::vector<Edit> out;
  for (const auto& f : p.functions) {
    lang::for_each_stmt(f, [&](const Stmt& s) {
      auto slots = expr_slots(s);
      for (size_t slot = 0; slot < slots.size(); ++slot) {
        std::vector<int> path{static_cast<int>(slot)};
        collect_expr_edits(*slots[slot], s.id, path, opts, out);
      }
      if (opts.operators.count(Operator::SDL) &&
          (s.kind == StmtKind::Assign || s.kind == StmtKind::ArrayWrite)) {
        Edit ed;
        ed.op = Operator::SDL;
        ed.stmt_id = s.id;
        ed.kind = Edit::Kind::DeleteStmt;
        ed.variant = "delete";
        out.push_back(std::move(ed));
      }
    });
  }
  std::sort(out.begin(), out.end(), [](const Edit& a, const Edit& b) {
    auto key = [](const Edit& e) {
      return std::make_tuple(e.stmt_id, path_str(e.path), static_cast<int>(e.op), e.variant);
    };
    return key(a) < key(b);
  });
  return out;
}

Stmt* find_stmt(std::vector<Stmt>& block, int id) {
  for (auto& s : block) {
    if (s.id == id) return &s;
    if (Stmt* hit = find_stmt(s.body, id)) return hit;
    if (Stmt* hit = find_stmt(s.else_body, id)) return hit;
  }
  return nullptr;
}

bool delete_stmt(std::vector<Stmt>& block, int id) {
  for (auto it = block.begin(); it != block.end(); ++it) {
    if (it->id == id) {
      block.erase(it);
      return true;
    }
    if (delete_stmt(it->body, id) || delete_stmt(it->else_body, id)) return true;
  }
  return false;
}

std::optional<Mutant> apply_edit(const Program& orig, const Edit& e) {
  Program copy = orig;
  std::string before, after;

  if (e.kind == Edit::Kind::DeleteStmt) {
    for (auto& f : copy.functions) {
      if (Stmt* s = find_stmt(f.body, e.stmt_id)) {
        before = lang::stmt_to_string(*s);
        delete_stmt(f.body, e.stmt_id);
        break;
      }
    }
    after = "(deleted)";
  } else {
    Stmt* s = nullptr;
    for (auto& f : copy.functions) {
      if ((s = find_stmt(f.body, e.stmt_id))) break;
    }
    if (!s) return std::nullopt;
    before = lang::stmt_to_string(*s);
    Expr* node = expr_slots(*s)[static_cast<size_t>(e.path[0])];
    for (size_t i = 1; i < e.path.size(); ++i) {
      node = &node->kids[static_cast<size_t>(e.path[i])];
    }
    if (e.kind == Edit::Kind::SetOp) {
      node->op = e.new_op;
    } else {
      node->int_val = e.new_lit;
    }
    after = lang::stmt_to_string(*s);
  }

  Mutant m;
  m.op = e.op;
  m.stmt_id = e.stmt_id;
  m.path = path_str(e.path);
  m.variant = e.variant;
  m.description = before + " -> " + after;
  try {
    m.program = lang::parse(lang::pretty_print(copy));
  } catch (const lang::Error&) {
    return std::nullopt;  // stillborn: the edit broke static validity
  }
  m.program.version_label = orig.version_label;
  return m;
}

// Runs every MR on one program, serially (called from inside parallel loops).
std::vector<mt::MrRunResult> run_all_mrs(const Program& p, const std::vector<mt::MrSpec>& mrs,
                                         const mt::TestSuite& sources, long long step_limit) {
  std::vector<mt::MrRunResult> out;
  out.reserve(mrs.size());
  for (const auto& mr : mrs) out.push_back(mt::run_mr(p, mr, sources, step_limit));
  return out;
}

bool error_by_fault(const mt::Verdict& v) {
  return v.kind == mt::VerdictKind::Error &&
         (v.cause == mt::ErrorCause::RuntimeError || v.cause == mt::ErrorCause::StepLimit);
}

}  // namespace

std::vector<Mutant> generate_mutants(const Program& p, const GenOptions& opts) {
  std::vector<Mutant> out;
  int seq = 0;
  for (const Edit& e : collect_edits(p, opts)) {
    if (auto m = apply_edit(p, e)) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "m%03d", ++seq);
      m->id = buf;
      out.push_back(std::move(*m));
    }
  }
  return out;
}

void screen_mutants(std::vector<Mutant>& mutants, const std::vector<mt::MrSpec>& mrs,
                    const mt::TestSuite& sources, long long step_limit, Parallelism par) {
  std::vector<std::string> errors(mutants.size());
  parallel_for(par, mutants.size(), [&](std::size_t i) {
    try {
      bool any_verdict = false;
      bool all_faulted = true;
      for (const auto& mr : mrs) {
        auto res = mt::run_mr(mutants[i].program, mr, sources, step_limit);
        for (const auto& v : res.verdicts) {
          any_verdict = true;
          if (!error_by_fault(v)) all_faulted = false;
        }
      }
      mutants[i].status =
          (any_verdict && all_faulted) ? MutantStatus::ScreenedOut : MutantStatus::Viable;
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw lang::Error("mutant screening failed: " + e);
  }
}

int KillMatrix::killable_count() const {
  int n = 0;
  for (std::size_t m = 0; m < mutant_ids.size(); ++m) {
    if (killable(m)) ++n;
  }
  return n;
}

bool KillMatrix::killable(std::size_t mutant_col) const {
  for (const auto& row : kills) {
    if (row[mutant_col]) return true;
  }
  return false;
}

KillMatrix build_kill_matrix(const Program& original, const std::vector<Mutant>& mutants,
                             const std::vector<mt::MrSpec>& mrs, const mt::TestSuite& sources,
                             MatrixRole role, long long step_limit, Parallelism par) {
  KillMatrix km;
  km.role = role;
  for (const auto& mr : mrs) km.mr_ids.push_back(mr.id);
  for (const auto& m : mutants) km.mutant_ids.push_back(m.id);

  // Baseline verdicts + the Eq.-style cost model both come from the original
  // program: an error there marks the (mr, case) pair as unusable for kills.
  auto baseline = run_all_mrs(original, mrs, sources, step_limit);
  for (const auto& r : baseline) km.mr_cost_steps.push_back(r.cost_steps);

  // Column-per-mutant scratch (vector<bool> rows are bit-packed and unsafe
  // for concurrent writes, so each task fills its own column).
  std::vector<std::vector<char>> cols(mutants.size(),
                                      std::vector<char>(mrs.size(), 0));
  std::vector<std::string> errors(mutants.size());
  parallel_for(par, mutants.size(), [&](std::size_t mi) {
    try {
      auto results = run_all_mrs(mutants[mi].program, mrs, sources, step_limit);
      for (std::size_t ri = 0; ri < mrs.size(); ++ri) {
        bool kill = false;
        for (std::size_t ci = 0; ci < results[ri].verdicts.size(); ++ci) {
          const auto& v = results[ri].verdicts[ci];
          if (v.kind == mt::VerdictKind::Violated) {
            kill = true;
            break;
          }
          if (error_by_fault(v) &&
              baseline[ri].verdicts[ci].kind != mt::VerdictKind::Error) {
            kill = true;  // the mutant crashed or hung where the original ran fine
            break;
          }
        }
        cols[mi][ri] = kill ? 1 : 0;
      }
    } catch (const std::exception& ex) {
      errors[mi] = ex.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw lang::Error("kill-matrix construction failed: " + e);
  }

  km.kills.assign(mrs.size(), std::vector<bool>(mutants.size(), false));
  for (std::size_t mi = 0; mi < mutants.size(); ++mi) {
    for (std::size_t ri = 0; ri < mrs.size(); ++ri) {
      km.kills[ri][mi] = cols[mi][ri] != 0;
    }
  }
  return km;
}

}  // namespace metaprio::mutation
