#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace metaprio::lang {

struct SrcPos {
  int line = 0;
  int col = 0;
};

enum class ValueType { Int, Bool, IntArray };

std::string to_string(ValueType t);

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

bool is_arith(BinOp op);
bool is_rel(BinOp op);
bool is_logic(BinOp op);
std::string to_string(BinOp op);

enum class ExprKind { IntLit, BoolLit, Var, Index, Len, Call, Not, Binary };

// Value-semantic expression tree. kids layout:
//   Index: [index expr] with name = array variable
//   Len:   [array expr]
//   Call:  args, with name = callee
//   Not:   [operand]
//   Binary:[lhs, rhs]
struct Expr {
  ExprKind kind = ExprKind::IntLit;
  BinOp op = BinOp::Add;
  long long int_val = 0;
  bool bool_val = false;
  std::string name;
  std::vector<Expr> kids;
  SrcPos pos;
};

enum class StmtKind { Assign, ArrayWrite, If, While, Return, Call };

std::string to_string(StmtKind k);

// One statement. if/while nodes are the headers: `expr` is the condition and
// the controlled statements live in `body` / `else_body`. Statement ids are
// program-unique and assigned densely in source order.
struct Stmt {
  int id = 0;
  StmtKind kind = StmtKind::Assign;
  std::string target;               // Assign / ArrayWrite
  Expr index;                       // ArrayWrite subscript
  Expr expr;                        // rhs / condition / return value / call
  std::vector<Stmt> body;           // If then-branch, While body
  std::vector<Stmt> else_body;      // If else-branch
  std::set<std::string> defs;
  std::set<std::string> uses;
  SrcPos pos;
};

struct Param {
  std::string name;
  ValueType type = ValueType::Int;
};

struct Function {
  std::string name;
  std::vector<Param> params;
  ValueType return_type = ValueType::Int;
  std::vector<Stmt> body;
  std::map<std::string, ValueType> var_types;  // params + inferred locals
};

struct Program {
  std::string version_label;
  std::vector<Function> functions;
  std::string source_digest;

  const Function* find_function(const std::string& name) const;
  const Function& function(const std::string& name) const;  // throws UnknownFunction
};

// Flat view over the nested statement structure: id -> statement and its
// enclosing function, in id order.
struct StatementTable {
  std::vector<const Stmt*> stmts;         // index 0 <-> id 1
  std::vector<const Function*> functions;  // parallel to stmts

  const Stmt& stmt(int id) const;
  const Function& function_of(int id) const;
  bool contains(int id) const { return id >= 1 && id <= static_cast<int>(stmts.size()); }
  int count() const { return static_cast<int>(stmts.size()); }
};

StatementTable build_statement_table(const Program& p);

// Preorder walk over every statement of a function (headers before bodies).
void for_each_stmt(const Function& f, const std::function<void(const Stmt&)>& fn);
void for_each_stmt(Function& f, const std::function<void(Stmt&)>& fn);

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SyntaxError : Error {
  SyntaxError(const std::string& msg, SrcPos p) : Error(msg), pos(p) {}
  SrcPos pos;
};

struct TypeError : Error {
  TypeError(const std::string& msg, SrcPos p) : Error(msg), pos(p) {}
  SrcPos pos;
};

struct DuplicateFunctionError : Error {
  using Error::Error;
};

struct UnknownFunctionError : Error {
  using Error::Error;
};

struct UnknownStatementError : Error {
  using Error::Error;
};

}  // namespace metaprio::lang
