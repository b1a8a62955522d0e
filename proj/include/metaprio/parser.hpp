#pragma once

#include <string>

#include "metaprio/ast.hpp"

namespace metaprio::lang {

// Parses and type-checks a whole program. Statement ids are assigned densely
// in source order, program-wide, starting at 1. Throws SyntaxError,
// DuplicateFunctionError, or TypeError.
Program parse(const std::string& source_text);

// Parses a single expression (used for custom output predicates). The
// expression may reference only the variables listed in `vars`; it is
// type-checked against those bindings and must have type `expected`.
Expr parse_expression(const std::string& source_text,
                      const std::map<std::string, ValueType>& vars,
                      ValueType expected);

// Count of arithmetic, relational, and logical operator nodes in the
// statement's expression trees (condition / rhs / subscript / call args).
// Assignment, indexing, len, and calls themselves are not counted.
int count_operators(const Program& p, int stmt_id);
int count_operators(const Stmt& s);

// Structural equality ignoring source positions (ids, kinds, names, operator
// trees, literals all compared).
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const Program& a, const Program& b);

}  // namespace metaprio::lang
