#include "metaprio/printer.hpp"

#include <sstream>

namespace metaprio::lang {

namespace {

int precedence(const Expr& e) {
  if (e.kind == ExprKind::Not) return 6;
  if (e.kind != ExprKind::Binary) return 7;
  switch (e.op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::Add:
    case BinOp::Sub: return 4;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return 5;
  }
  return 7;
}

void print_expr(const Expr& e, int min_prec, std::string& out) {
  int prec = precedence(e);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case ExprKind::IntLit:
      out += std::to_string(e.int_val);
      break;
    case ExprKind::BoolLit:
      out += e.bool_val ? "true" : "false";
      break;
    case ExprKind::Var:
      out += e.name;
      break;
    case ExprKind::Index:
      out += e.name;
      out += '[';
      print_expr(e.kids[0], 0, out);
      out += ']';
      break;
    case ExprKind::Len:
      out += "len(";
      print_expr(e.kids[0], 0, out);
      out += ')';
      break;
    case ExprKind::Call:
      out += e.name;
      out += '(';
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        print_expr(e.kids[i], 0, out);
      }
      out += ')';
      break;
    case ExprKind::Not:
      out += '!';
      print_expr(e.kids[0], 6, out);
      break;
    case ExprKind::Binary:
      // Left-associative: the right operand needs parens at equal precedence.
      print_expr(e.kids[0], prec, out);
      out += ' ';
      out += to_string(e.op);
      out += ' ';
      print_expr(e.kids[1], prec + 1, out);
      break;
  }
  if (parens) out += ')';
}

std::string type_str(ValueType t) { return to_string(t); }

void print_stmt(const Stmt& s, int depth, std::string& out);

void print_block(const std::vector<Stmt>& stmts, int depth, std::string& out) {
  for (const auto& s : stmts) print_stmt(s, depth, out);
}

void print_stmt(const Stmt& s, int depth, std::string& out) {
  std::string ind(static_cast<size_t>(depth) * 2, ' ');
  out += ind;
  switch (s.kind) {
    case StmtKind::Assign:
      out += s.target;
      out += " = ";
      print_expr(s.expr, 0, out);
      out += '\n';
      break;
    case StmtKind::ArrayWrite:
      out += s.target;
      out += '[';
      print_expr(s.index, 0, out);
      out += "] = ";
      print_expr(s.expr, 0, out);
      out += '\n';
      break;
    case StmtKind::If:
      out += "if (";
      print_expr(s.expr, 0, out);
      out += ") {\n";
      print_block(s.body, depth + 1, out);
      out += ind;
      out += '}';
      if (!s.else_body.empty()) {
        out += " else {\n";
        print_block(s.else_body, depth + 1, out);
        out += ind;
        out += '}';
      }
      out += '\n';
      break;
    case StmtKind::While:
      out += "while (";
      print_expr(s.expr, 0, out);
      out += ") {\n";
      print_block(s.body, depth + 1, out);
      out += ind;
      out += "}\n";
      break;
    case StmtKind::Return:
      out += "return ";
      print_expr(s.expr, 0, out);
      out += '\n';
      break;
    case StmtKind::Call:
      print_expr(s.expr, 0, out);
      out += '\n';
      break;
  }
}

}  // namespace

std::string pretty_print(const Function& f) {
  std::string out = "fn " + f.name + "(";
  for (size_t i = 0; i < f.params.size(); ++i) {
    if (i) out += ", ";
    out += f.params[i].name + ": " + type_str(f.params[i].type);
  }
  out += ") -> " + type_str(f.return_type) + " {\n";
  print_block(f.body, 1, out);
  out += "}\n";
  return out;
}

std::string pretty_print(const Program& p) {
  std::string out;
  for (size_t i = 0; i < p.functions.size(); ++i) {
    if (i) out += '\n';
    out += pretty_print(p.functions[i]);
  }
  return out;
}

std::string expr_to_string(const Expr& e) {
  std::string out;
  print_expr(e, 0, out);
  return out;
}

std::string stmt_to_string(const Stmt& s) {
  std::string out;
  switch (s.kind) {
    case StmtKind::Assign:
      out = s.target + " = " + expr_to_string(s.expr);
      break;
    case StmtKind::ArrayWrite:
      out = s.target + "[" + expr_to_string(s.index) + "] = " + expr_to_string(s.expr);
      break;
    case StmtKind::If:
      out = "if (" + expr_to_string(s.expr) + ")";
      break;
    case StmtKind::While:
      out = "while (" + expr_to_string(s.expr) + ")";
      break;
    case StmtKind::Return:
      out = "return " + expr_to_string(s.expr);
      break;
    case StmtKind::Call:
      out = expr_to_string(s.expr);
      break;
  }
  return out;
}

}  // namespace metaprio::lang
