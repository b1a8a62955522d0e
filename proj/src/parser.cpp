#include "metaprio/parser.hpp"

#include <optional>
#include <unordered_map>

#include "metaprio/digest.hpp"
#include "metaprio/lexer.hpp"

namespace metaprio::lang {

namespace {

struct FnSig {
  std::vector<ValueType> params;
  ValueType ret = ValueType::Int;
};

using SigMap = std::unordered_map<std::string, FnSig>;

std::string pos_str(SrcPos p) {
  return std::to_string(p.line) + ":" + std::to_string(p.col);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse_program() {
    Program p;
    while (!at(TokKind::Eof)) {
      p.functions.push_back(parse_function());
    }
    return p;
  }

  Expr parse_single_expression() {
    Expr e = parse_expr();
    expect(TokKind::Eof, "end of expression");
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int next_id_ = 1;

  const Token& cur() const { return toks_[pos_]; }
  bool at(TokKind k) const { return cur().kind == k; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) {
    const Token& t = cur();
    std::string got = t.kind == TokKind::Eof ? "end of input" : "'" + t.text + "'";
    throw SyntaxError("expected " + what + ", got " + got + " at " + pos_str(t.pos), t.pos);
  }

  Token expect(TokKind k, const std::string& what) {
    if (!at(k)) fail(what);
    return take();
  }

  void skip_semi() {
    if (at(TokKind::Semi)) take();
  }

  ValueType parse_type() {
    if (at(TokKind::KwInt)) {
      take();
      return ValueType::Int;
    }
    if (at(TokKind::KwBool)) {
      take();
      return ValueType::Bool;
    }
    if (at(TokKind::LBracket)) {
      take();
      expect(TokKind::KwInt, "'int'");
      expect(TokKind::RBracket, "']'");
      return ValueType::IntArray;
    }
    fail("a type");
  }

  Function parse_function() {
    expect(TokKind::KwFn, "'fn'");
    Function f;
    Token name = expect(TokKind::Ident, "function name");
    f.name = name.text;
    expect(TokKind::LParen, "'('");
    if (!at(TokKind::RParen)) {
      while (true) {
        Token pn = expect(TokKind::Ident, "parameter name");
        expect(TokKind::Colon, "':'");
        ValueType pt = parse_type();
        for (const auto& prev : f.params) {
          if (prev.name == pn.text) {
            throw TypeError("duplicate parameter '" + pn.text + "' at " + pos_str(pn.pos), pn.pos);
          }
        }
        f.params.push_back({pn.text, pt});
        if (at(TokKind::Comma)) {
          take();
          continue;
        }
        break;
      }
    }
    expect(TokKind::RParen, "')'");
    f.return_type = ValueType::Int;
    if (at(TokKind::Arrow)) {
      take();
      SrcPos tp = cur().pos;
      ValueType rt = parse_type();
      if (rt == ValueType::IntArray) {
        throw TypeError("functions return scalar values at " + pos_str(tp), tp);
      }
      f.return_type = rt;
    }
    expect(TokKind::LBrace, "'{'");
    f.body = parse_block();
    return f;
  }

  // Caller has consumed '{'; consumes the matching '}'.
  std::vector<Stmt> parse_block() {
    std::vector<Stmt> out;
    while (!at(TokKind::RBrace)) {
      if (at(TokKind::Eof)) fail("'}'");
      out.push_back(parse_stmt());
    }
    take();  // '}'
    return out;
  }

  Stmt parse_stmt() {
    if (at(TokKind::KwIf)) return parse_if();
    if (at(TokKind::KwWhile)) return parse_while();
    if (at(TokKind::KwReturn)) return parse_return();
    if (at(TokKind::Ident)) return parse_ident_stmt();
    fail("a statement");
  }

  Stmt parse_if() {
    Token kw = take();
    Stmt s;
    s.id = next_id_++;
    s.kind = StmtKind::If;
    s.pos = kw.pos;
    expect(TokKind::LParen, "'('");
    s.expr = parse_expr();
    expect(TokKind::RParen, "')'");
    expect(TokKind::LBrace, "'{'");
    s.body = parse_block();
    if (at(TokKind::KwElse)) {
      take();
      expect(TokKind::LBrace, "'{'");
      s.else_body = parse_block();
    }
    return s;
  }

  Stmt parse_while() {
    Token kw = take();
    Stmt s;
    s.id = next_id_++;
    s.kind = StmtKind::While;
    s.pos = kw.pos;
    expect(TokKind::LParen, "'('");
    s.expr = parse_expr();
    expect(TokKind::RParen, "')'");
    expect(TokKind::LBrace, "'{'");
    s.body = parse_block();
    return s;
  }

  Stmt parse_return() {
    Token kw = take();
    Stmt s;
    s.id = next_id_++;
    s.kind = StmtKind::Return;
    s.pos = kw.pos;
    s.expr = parse_expr();
    skip_semi();
    return s;
  }

  Stmt parse_ident_stmt() {
    Token name = take();
    Stmt s;
    s.pos = name.pos;
    if (at(TokKind::Assign)) {
      take();
      s.id = next_id_++;
      s.kind = StmtKind::Assign;
      s.target = name.text;
      s.expr = parse_expr();
      skip_semi();
      return s;
    }
    if (at(TokKind::LBracket)) {
      take();
      s.id = next_id_++;
      s.kind = StmtKind::ArrayWrite;
      s.target = name.text;
      s.index = parse_expr();
      expect(TokKind::RBracket, "']'");
      expect(TokKind::Assign, "'='");
      s.expr = parse_expr();
      skip_semi();
      return s;
    }
    if (at(TokKind::LParen)) {
      s.id = next_id_++;
      s.kind = StmtKind::Call;
      s.expr = parse_call_tail(name);
      skip_semi();
      return s;
    }
    fail("'=', '[', or '(' after identifier");
  }

  Expr parse_call_tail(const Token& callee) {
    take();  // '('
    Expr e;
    e.kind = ExprKind::Call;
    e.name = callee.text;
    e.pos = callee.pos;
    if (!at(TokKind::RParen)) {
      while (true) {
        e.kids.push_back(parse_expr());
        if (at(TokKind::Comma)) {
          take();
          continue;
        }
        break;
      }
    }
    expect(TokKind::RParen, "')'");
    return e;
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (at(TokKind::OrOr)) {
      Token op = take();
      Expr rhs = parse_and();
      lhs = make_binary(BinOp::Or, std::move(lhs), std::move(rhs), op.pos);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_rel();
    while (at(TokKind::AndAnd)) {
      Token op = take();
      Expr rhs = parse_rel();
      lhs = make_binary(BinOp::And, std::move(lhs), std::move(rhs), op.pos);
    }
    return lhs;
  }

  std::optional<BinOp> rel_op() const {
    switch (cur().kind) {
      case TokKind::Lt: return BinOp::Lt;
      case TokKind::Le: return BinOp::Le;
      case TokKind::Gt: return BinOp::Gt;
      case TokKind::Ge: return BinOp::Ge;
      case TokKind::Eq: return BinOp::Eq;
      case TokKind::Ne: return BinOp::Ne;
      default: return std::nullopt;
    }
  }

  Expr parse_rel() {
    Expr lhs = parse_add();
    while (auto op = rel_op()) {
      Token t = take();
      Expr rhs = parse_add();
      lhs = make_binary(*op, std::move(lhs), std::move(rhs), t.pos);
    }
    return lhs;
  }

  Expr parse_add() {
    Expr lhs = parse_mul();
    while (at(TokKind::Plus) || at(TokKind::Minus)) {
      Token t = take();
      Expr rhs = parse_mul();
      lhs = make_binary(t.kind == TokKind::Plus ? BinOp::Add : BinOp::Sub, std::move(lhs),
                        std::move(rhs), t.pos);
    }
    return lhs;
  }

  Expr parse_mul() {
    Expr lhs = parse_unary();
    while (at(TokKind::Star) || at(TokKind::Slash) || at(TokKind::Percent)) {
      Token t = take();
      Expr rhs = parse_unary();
      BinOp op = t.kind == TokKind::Star ? BinOp::Mul
                 : t.kind == TokKind::Slash ? BinOp::Div
                                            : BinOp::Mod;
      lhs = make_binary(op, std::move(lhs), std::move(rhs), t.pos);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at(TokKind::Bang)) {
      Token t = take();
      Expr e;
      e.kind = ExprKind::Not;
      e.pos = t.pos;
      e.kids.push_back(parse_unary());
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    if (at(TokKind::IntLit)) {
      Token t = take();
      Expr e;
      e.kind = ExprKind::IntLit;
      e.int_val = t.int_val;
      e.pos = t.pos;
      return e;
    }
    if (at(TokKind::KwTrue) || at(TokKind::KwFalse)) {
      Token t = take();
      Expr e;
      e.kind = ExprKind::BoolLit;
      e.bool_val = t.kind == TokKind::KwTrue;
      e.pos = t.pos;
      return e;
    }
    if (at(TokKind::KwLen)) {
      Token t = take();
      expect(TokKind::LParen, "'('");
      Expr e;
      e.kind = ExprKind::Len;
      e.pos = t.pos;
      e.kids.push_back(parse_expr());
      expect(TokKind::RParen, "')'");
      return e;
    }
    if (at(TokKind::LParen)) {
      take();
      Expr e = parse_expr();
      expect(TokKind::RParen, "')'");
      return e;
    }
    if (at(TokKind::Ident)) {
      Token name = take();
      if (at(TokKind::LParen)) return parse_call_tail(name);
      if (at(TokKind::LBracket)) {
        take();
        Expr e;
        e.kind = ExprKind::Index;
        e.name = name.text;
        e.pos = name.pos;
        e.kids.push_back(parse_expr());
        expect(TokKind::RBracket, "']'");
        return e;
      }
      Expr e;
      e.kind = ExprKind::Var;
      e.name = name.text;
      e.pos = name.pos;
      return e;
    }
    fail("an expression");
  }

  static Expr make_binary(BinOp op, Expr lhs, Expr rhs, SrcPos pos) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.op = op;
    e.pos = pos;
    e.kids.push_back(std::move(lhs));
    e.kids.push_back(std::move(rhs));
    return e;
  }
};

// ------------------------- semantic analysis -------------------------

void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::Var || e.kind == ExprKind::Index) out.insert(e.name);
  for (const auto& k : e.kids) collect_vars(k, out);
}

// Best-effort type inference walk: records new variable types in `vars`
// (weakly, from the expected type pushed down by context) and reports via
// `changed`. Conflicting rebindings are hard errors. Returns nullopt when a
// type cannot be determined yet.
class Inferencer {
 public:
  Inferencer(std::map<std::string, ValueType>& vars, const SigMap& sigs, bool& changed)
      : vars_(vars), sigs_(sigs), changed_(changed) {}

  std::optional<ValueType> infer(const Expr& e, std::optional<ValueType> expected) {
    switch (e.kind) {
      case ExprKind::IntLit: return ValueType::Int;
      case ExprKind::BoolLit: return ValueType::Bool;
      case ExprKind::Var: {
        auto it = vars_.find(e.name);
        if (it != vars_.end()) return it->second;
        if (expected) {
          bind(e.name, *expected, e.pos);
          return expected;
        }
        return std::nullopt;
      }
      case ExprKind::Index:
        bind(e.name, ValueType::IntArray, e.pos);
        infer(e.kids[0], ValueType::Int);
        return ValueType::Int;
      case ExprKind::Len:
        if (e.kids[0].kind == ExprKind::Var) bind(e.kids[0].name, ValueType::IntArray, e.pos);
        return ValueType::Int;
      case ExprKind::Call: {
        auto it = sigs_.find(e.name);
        if (it == sigs_.end()) return std::nullopt;
        const FnSig& sig = it->second;
        for (size_t i = 0; i < e.kids.size(); ++i) {
          infer(e.kids[i], i < sig.params.size() ? std::optional(sig.params[i]) : std::nullopt);
        }
        return sig.ret;
      }
      case ExprKind::Not:
        infer(e.kids[0], ValueType::Bool);
        return ValueType::Bool;
      case ExprKind::Binary: {
        ValueType operand = is_logic(e.op) ? ValueType::Bool : ValueType::Int;
        infer(e.kids[0], operand);
        infer(e.kids[1], operand);
        return is_arith(e.op) ? ValueType::Int : ValueType::Bool;
      }
    }
    return std::nullopt;
  }

  void bind(const std::string& name, ValueType t, SrcPos pos) {
    auto it = vars_.find(name);
    if (it == vars_.end()) {
      vars_.emplace(name, t);
      changed_ = true;
      return;
    }
    if (it->second != t) {
      throw TypeError("variable '" + name + "' used as both " + to_string(it->second) + " and " +
                          to_string(t) + " at " + pos_str(pos),
                      pos);
    }
  }

 private:
  std::map<std::string, ValueType>& vars_;
  const SigMap& sigs_;
  bool& changed_;
};

void infer_stmt(const Stmt& s, Inferencer& inf, const SigMap& sigs, ValueType ret,
                std::map<std::string, ValueType>& vars, bool& changed) {
  switch (s.kind) {
    case StmtKind::Assign: {
      auto it = vars.find(s.target);
      std::optional<ValueType> expected =
          it != vars.end() ? std::optional(it->second) : std::nullopt;
      auto t = inf.infer(s.expr, expected);
      if (t && it == vars.end()) inf.bind(s.target, *t, s.pos);
      break;
    }
    case StmtKind::ArrayWrite:
      inf.bind(s.target, ValueType::IntArray, s.pos);
      inf.infer(s.index, ValueType::Int);
      inf.infer(s.expr, ValueType::Int);
      break;
    case StmtKind::If:
    case StmtKind::While:
      inf.infer(s.expr, ValueType::Bool);
      break;
    case StmtKind::Return:
      inf.infer(s.expr, ret);
      break;
    case StmtKind::Call:
      inf.infer(s.expr, std::nullopt);
      break;
  }
  for (const auto& k : s.body) infer_stmt(k, inf, sigs, ret, vars, changed);
  for (const auto& k : s.else_body) infer_stmt(k, inf, sigs, ret, vars, changed);
}

// Strict checker used once inference has settled. Throws TypeError.
ValueType check_expr(const Expr& e, const std::map<std::string, ValueType>& vars,
                     const SigMap& sigs) {
  auto require = [&](const Expr& sub, ValueType want, const char* ctx) {
    ValueType got = check_expr(sub, vars, sigs);
    if (got != want) {
      throw TypeError(std::string(ctx) + " expects " + to_string(want) + ", got " +
                          to_string(got) + " at " + pos_str(sub.pos),
                      sub.pos);
    }
  };
  switch (e.kind) {
    case ExprKind::IntLit: return ValueType::Int;
    case ExprKind::BoolLit: return ValueType::Bool;
    case ExprKind::Var: {
      auto it = vars.find(e.name);
      if (it == vars.end()) {
        throw TypeError("cannot infer type of variable '" + e.name + "' at " + pos_str(e.pos),
                        e.pos);
      }
      return it->second;
    }
    case ExprKind::Index: {
      auto it = vars.find(e.name);
      if (it == vars.end() || it->second != ValueType::IntArray) {
        throw TypeError("'" + e.name + "' is not an array at " + pos_str(e.pos), e.pos);
      }
      require(e.kids[0], ValueType::Int, "array subscript");
      return ValueType::Int;
    }
    case ExprKind::Len:
      require(e.kids[0], ValueType::IntArray, "len");
      return ValueType::Int;
    case ExprKind::Call: {
      auto it = sigs.find(e.name);
      if (it == sigs.end()) {
        throw TypeError("call to unknown function '" + e.name + "' at " + pos_str(e.pos), e.pos);
      }
      const FnSig& sig = it->second;
      if (e.kids.size() != sig.params.size()) {
        throw TypeError("'" + e.name + "' takes " + std::to_string(sig.params.size()) +
                            " argument(s), got " + std::to_string(e.kids.size()) + " at " +
                            pos_str(e.pos),
                        e.pos);
      }
      for (size_t i = 0; i < e.kids.size(); ++i) {
        require(e.kids[i], sig.params[i], "argument");
      }
      return sig.ret;
    }
    case ExprKind::Not:
      require(e.kids[0], ValueType::Bool, "'!'");
      return ValueType::Bool;
    case ExprKind::Binary: {
      ValueType operand = is_logic(e.op) ? ValueType::Bool : ValueType::Int;
      std::string ctx = "'" + to_string(e.op) + "'";
      require(e.kids[0], operand, ctx.c_str());
      require(e.kids[1], operand, ctx.c_str());
      return is_arith(e.op) ? ValueType::Int : ValueType::Bool;
    }
  }
  throw TypeError("malformed expression", e.pos);
}

void check_stmt(const Stmt& s, const std::map<std::string, ValueType>& vars, const SigMap& sigs,
                ValueType ret) {
  auto require = [&](const Expr& e, ValueType want, const char* ctx) {
    ValueType got = check_expr(e, vars, sigs);
    if (got != want) {
      throw TypeError(std::string(ctx) + " expects " + to_string(want) + ", got " +
                          to_string(got) + " at " + pos_str(e.pos),
                      e.pos);
    }
  };
  switch (s.kind) {
    case StmtKind::Assign: {
      ValueType rhs = check_expr(s.expr, vars, sigs);
      auto it = vars.find(s.target);
      if (it == vars.end()) {
        throw TypeError("cannot infer type of variable '" + s.target + "'", s.pos);
      }
      if (it->second != rhs) {
        throw TypeError("assignment to '" + s.target + "' (" + to_string(it->second) +
                            ") from " + to_string(rhs) + " at " + pos_str(s.pos),
                        s.pos);
      }
      break;
    }
    case StmtKind::ArrayWrite: {
      auto it = vars.find(s.target);
      if (it == vars.end() || it->second != ValueType::IntArray) {
        throw TypeError("'" + s.target + "' is not an array at " + pos_str(s.pos), s.pos);
      }
      require(s.index, ValueType::Int, "array subscript");
      require(s.expr, ValueType::Int, "array element");
      break;
    }
    case StmtKind::If:
    case StmtKind::While:
      require(s.expr, ValueType::Bool, "condition");
      break;
    case StmtKind::Return:
      require(s.expr, ret, "return");
      break;
    case StmtKind::Call:
      check_expr(s.expr, vars, sigs);
      break;
  }
  for (const auto& k : s.body) check_stmt(k, vars, sigs, ret);
  for (const auto& k : s.else_body) check_stmt(k, vars, sigs, ret);
}

// Returns true when every control path through the block ends in `return`.
// Statements after a point of guaranteed return are rejected as unreachable.
bool block_returns(const std::vector<Stmt>& stmts) {
  bool done = false;
  for (const auto& s : stmts) {
    if (done) {
      throw TypeError("unreachable statement at " + pos_str(s.pos), s.pos);
    }
    switch (s.kind) {
      case StmtKind::Return:
        done = true;
        break;
      case StmtKind::If: {
        // Both branches must return; an absent/empty else leaves a fallthrough path.
        bool then_r = block_returns(s.body);
        bool else_r = block_returns(s.else_body);
        done = then_r && else_r;
        break;
      }
      case StmtKind::While:
        block_returns(s.body);  // validate nested unreachability
        break;
      default:
        break;
    }
  }
  return done;
}

void compute_defs_uses(Stmt& s) {
  switch (s.kind) {
    case StmtKind::Assign:
      s.defs = {s.target};
      collect_vars(s.expr, s.uses);
      break;
    case StmtKind::ArrayWrite:
      s.defs = {s.target};
      collect_vars(s.index, s.uses);
      collect_vars(s.expr, s.uses);
      break;
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::Return:
    case StmtKind::Call:
      collect_vars(s.expr, s.uses);
      break;
  }
  for (auto& k : s.body) compute_defs_uses(k);
  for (auto& k : s.else_body) compute_defs_uses(k);
}

void analyze(Program& p) {
  SigMap sigs;
  for (const auto& f : p.functions) {
    if (sigs.count(f.name)) {
      throw DuplicateFunctionError("duplicate function: " + f.name);
    }
    FnSig sig;
    for (const auto& pr : f.params) sig.params.push_back(pr.type);
    sig.ret = f.return_type;
    sigs.emplace(f.name, sig);
  }
  for (auto& f : p.functions) {
    f.var_types.clear();
    for (const auto& pr : f.params) f.var_types.emplace(pr.name, pr.type);
    // Fixpoint inference: each pass may learn more local types.
    bool changed = true;
    while (changed) {
      changed = false;
      Inferencer inf(f.var_types, sigs, changed);
      for (const auto& s : f.body) infer_stmt(s, inf, sigs, f.return_type, f.var_types, changed);
    }
    for (const auto& s : f.body) check_stmt(s, f.var_types, sigs, f.return_type);
    if (!block_returns(f.body)) {
      throw TypeError("not every control path in '" + f.name + "' returns a value",
                      f.body.empty() ? SrcPos{} : f.body.front().pos);
    }
    for (auto& s : f.body) compute_defs_uses(s);
  }
}

int count_expr_ops(const Expr& e) {
  int n = (e.kind == ExprKind::Binary || e.kind == ExprKind::Not) ? 1 : 0;
  for (const auto& k : e.kids) n += count_expr_ops(k);
  return n;
}

}  // namespace

Program parse(const std::string& source_text) {
  Parser parser(lex(source_text));
  Program p = parser.parse_program();
  analyze(p);
  p.source_digest = fnv1a64_hex(source_text);
  return p;
}

Expr parse_expression(const std::string& source_text,
                      const std::map<std::string, ValueType>& vars, ValueType expected) {
  Parser parser(lex(source_text));
  Expr e = parser.parse_single_expression();
  SigMap no_fns;
  ValueType got = check_expr(e, vars, no_fns);
  if (got != expected) {
    throw TypeError("expression has type " + to_string(got) + ", expected " + to_string(expected),
                    e.pos);
  }
  return e;
}

int count_operators(const Stmt& s) {
  int n = count_expr_ops(s.expr);
  if (s.kind == StmtKind::ArrayWrite) n += count_expr_ops(s.index);
  return n;
}

int count_operators(const Program& p, int stmt_id) {
  StatementTable t = build_statement_table(p);
  return count_operators(t.stmt(stmt_id));
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case ExprKind::IntLit:
      if (a.int_val != b.int_val) return false;
      break;
    case ExprKind::BoolLit:
      if (a.bool_val != b.bool_val) return false;
      break;
    case ExprKind::Var:
    case ExprKind::Index:
    case ExprKind::Call:
      if (a.name != b.name) return false;
      break;
    case ExprKind::Binary:
      if (a.op != b.op) return false;
      break;
    default:
      break;
  }
  for (size_t i = 0; i < a.kids.size(); ++i) {
    if (!structurally_equal(a.kids[i], b.kids[i])) return false;
  }
  return true;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
  if (a.id != b.id || a.kind != b.kind || a.target != b.target) return false;
  if (a.defs != b.defs || a.uses != b.uses) return false;
  if (!structurally_equal(a.expr, b.expr)) return false;
  if (a.kind == StmtKind::ArrayWrite && !structurally_equal(a.index, b.index)) return false;
  if (a.body.size() != b.body.size() || a.else_body.size() != b.else_body.size()) return false;
  for (size_t i = 0; i < a.body.size(); ++i) {
    if (!structurally_equal(a.body[i], b.body[i])) return false;
  }
  for (size_t i = 0; i < a.else_body.size(); ++i) {
    if (!structurally_equal(a.else_body[i], b.else_body[i])) return false;
  }
  return true;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.functions.size() != b.functions.size()) return false;
  for (size_t i = 0; i < a.functions.size(); ++i) {
    const Function& fa = a.functions[i];
    const Function& fb = b.functions[i];
    if (fa.name != fb.name || fa.return_type != fb.return_type) return false;
    if (fa.params.size() != fb.params.size()) return false;
    for (size_t j = 0; j < fa.params.size(); ++j) {
      if (fa.params[j].name != fb.params[j].name || fa.params[j].type != fb.params[j].type) {
        return false;
      }
    }
    if (fa.var_types != fb.var_types) return false;
    if (fa.body.size() != fb.body.size()) return false;
    for (size_t j = 0; j < fa.body.size(); ++j) {
      if (!structurally_equal(fa.body[j], fb.body[j])) return false;
    }
  }
  return true;
}

}  // namespace metaprio::lang
