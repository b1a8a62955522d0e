#pragma once

#include <string>
#include <vector>

#include "metaprio/ast.hpp"

namespace metaprio::lang {

enum class TokKind {
  Ident,
  IntLit,
  KwFn,
  KwIf,
  KwElse,
  KwWhile,
  KwReturn,
  KwTrue,
  KwFalse,
  KwInt,
  KwBool,
  KwLen,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Arrow,   // ->
  Assign,  // =
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  AndAnd,
  OrOr,
  Bang,
  Colon,
  Eof,
};

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  long long int_val = 0;
  SrcPos pos;
};

// Tokenizes the whole input. `#` starts a comment running to end of line.
// Throws SyntaxError on unknown characters or malformed literals.
std::vector<Token> lex(const std::string& src);

}  // namespace metaprio::lang
