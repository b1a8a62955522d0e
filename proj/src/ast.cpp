#include "metaprio/ast.hpp"

namespace metaprio::lang {

std::string to_string(ValueType t) {
  switch (t) {
    case ValueType::Int: return "int";
    case ValueType::Bool: return "bool";
    case ValueType::IntArray: return "[int]";
  }
  return "?";
}

bool is_arith(BinOp op) {
  switch (op) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod:
      return true;
    default:
      return false;
  }
}

bool is_rel(BinOp op) {
  switch (op) {
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne:
      return true;
    default:
      return false;
  }
}

bool is_logic(BinOp op) { return op == BinOp::And || op == BinOp::Or; }

std::string to_string(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

std::string to_string(StmtKind k) {
  switch (k) {
    case StmtKind::Assign: return "assign";
    case StmtKind::ArrayWrite: return "array-write";
    case StmtKind::If: return "if";
    case StmtKind::While: return "while";
    case StmtKind::Return: return "return";
    case StmtKind::Call: return "call";
  }
  return "?";
}

const Function* Program::find_function(const std::string& name) const {
  for (const auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Function& Program::function(const std::string& name) const {
  const Function* f = find_function(name);
  if (!f) throw UnknownFunctionError("unknown function: " + name);
  return *f;
}

namespace {

void walk(const std::vector<Stmt>& stmts, const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : stmts) {
    fn(s);
    walk(s.body, fn);
    walk(s.else_body, fn);
  }
}

void walk_mut(std::vector<Stmt>& stmts, const std::function<void(Stmt&)>& fn) {
  for (auto& s : stmts) {
    fn(s);
    walk_mut(s.body, fn);
    walk_mut(s.else_body, fn);
  }
}

}  // namespace

void for_each_stmt(const Function& f, const std::function<void(const Stmt&)>& fn) {
  walk(f.body, fn);
}

void for_each_stmt(Function& f, const std::function<void(Stmt&)>& fn) {
  walk_mut(f.body, fn);
}

const Stmt& StatementTable::stmt(int id) const {
  if (!contains(id)) throw UnknownStatementError("unknown statement id: " + std::to_string(id));
  return *stmts[static_cast<size_t>(id - 1)];
}

const Function& StatementTable::function_of(int id) const {
  if (!contains(id)) throw UnknownStatementError("unknown statement id: " + std::to_string(id));
  return *functions[static_cast<size_t>(id - 1)];
}

StatementTable build_statement_table(const Program& p) {
  // Collect (id, stmt, fn) then order by id; ids are dense so the vector is
  // directly indexable afterwards.
  std::vector<std::pair<const Stmt*, const Function*>> by_id;
  for (const auto& f : p.functions) {
    for_each_stmt(f, [&](const Stmt& s) { by_id.emplace_back(&s, &f); });
  }
  StatementTable t;
  t.stmts.resize(by_id.size(), nullptr);
  t.functions.resize(by_id.size(), nullptr);
  for (auto& [s, f] : by_id) {
    int idx = s->id - 1;
    if (idx < 0 || idx >= static_cast<int>(by_id.size()) || t.stmts[idx] != nullptr) {
      throw Error("statement ids are not dense/unique");
    }
    t.stmts[idx] = s;
    t.functions[idx] = f;
  }
  return t;
}

}  // namespace metaprio::lang
