#pragma once

#include <string>

#include "metaprio/ast.hpp"

namespace metaprio::lang {

// Canonical source form: two-space indent, no semicolons, minimal parentheses.
// Guaranteed round-trip: parse(pretty_print(parse(t))) is structurally equal
// to parse(t).
std::string pretty_print(const Program& p);
std::string pretty_print(const Function& f);

// Single-line rendering with minimal parentheses (used in mutant descriptions
// and diagnostics).
std::string expr_to_string(const Expr& e);
std::string stmt_to_string(const Stmt& s);  // header line only for if/while

}  // namespace metaprio::lang
