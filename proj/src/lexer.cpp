#include "metaprio/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace metaprio::lang {

namespace {

const std::unordered_map<std::string, TokKind> kKeywords = {
    {"fn", TokKind::KwFn},         {"if", TokKind::KwIf},
    {"else", TokKind::KwElse},     {"while", TokKind::KwWhile},
    {"return", TokKind::KwReturn}, {"true", TokKind::KwTrue},
    {"false", TokKind::KwFalse},   {"int", TokKind::KwInt},
    {"bool", TokKind::KwBool},     {"len", TokKind::KwLen},
};

}  // namespace

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  const size_t n = src.size();

  auto peek = [&](size_t off = 0) -> char {
    return i + off < n ? src[i + off] : '\0';
  };
  auto advance = [&]() {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto push = [&](TokKind k, std::string text, SrcPos p) {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.pos = p;
    out.push_back(std::move(t));
  };

  while (i < n) {
    char c = peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < n && peek() != '\n') advance();
      continue;
    }
    SrcPos pos{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (i < n && std::isdigit(static_cast<unsigned char>(peek()))) {
        text += peek();
        advance();
      }
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        throw SyntaxError("malformed integer literal '" + text + peek() + "'", pos);
      }
      Token t;
      t.kind = TokKind::IntLit;
      t.text = text;
      try {
        t.int_val = std::stoll(text);
      } catch (const std::out_of_range&) {
        throw SyntaxError("integer literal out of range: " + text, pos);
      }
      t.pos = pos;
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (i < n && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        text += peek();
        advance();
      }
      auto it = kKeywords.find(text);
      push(it != kKeywords.end() ? it->second : TokKind::Ident, text, pos);
      continue;
    }
    switch (c) {
      case '(': advance(); push(TokKind::LParen, "(", pos); continue;
      case ')': advance(); push(TokKind::RParen, ")", pos); continue;
      case '{': advance(); push(TokKind::LBrace, "{", pos); continue;
      case '}': advance(); push(TokKind::RBrace, "}", pos); continue;
      case '[': advance(); push(TokKind::LBracket, "[", pos); continue;
      case ']': advance(); push(TokKind::RBracket, "]", pos); continue;
      case ',': advance(); push(TokKind::Comma, ",", pos); continue;
      case ';': advance(); push(TokKind::Semi, ";", pos); continue;
      case ':': advance(); push(TokKind::Colon, ":", pos); continue;
      case '+': advance(); push(TokKind::Plus, "+", pos); continue;
      case '*': advance(); push(TokKind::Star, "*", pos); continue;
      case '/': advance(); push(TokKind::Slash, "/", pos); continue;
      case '%': advance(); push(TokKind::Percent, "%", pos); continue;
      case '-':
        advance();
        if (peek() == '>') {
          advance();
          push(TokKind::Arrow, "->", pos);
        } else {
          push(TokKind::Minus, "-", pos);
        }
        continue;
      case '=':
        advance();
        if (peek() == '=') {
          advance();
          push(TokKind::Eq, "==", pos);
        } else {
          push(TokKind::Assign, "=", pos);
        }
        continue;
      case '!':
        advance();
        if (peek() == '=') {
          advance();
          push(TokKind::Ne, "!=", pos);
        } else {
          push(TokKind::Bang, "!", pos);
        }
        continue;
      case '<':
        advance();
        if (peek() == '=') {
          advance();
          push(TokKind::Le, "<=", pos);
        } else {
          push(TokKind::Lt, "<", pos);
        }
        continue;
      case '>':
        advance();
        if (peek() == '=') {
          advance();
          push(TokKind::Ge, ">=", pos);
        } else {
          push(TokKind::Gt, ">", pos);
        }
        continue;
      case '&':
        advance();
        if (peek() == '&') {
          advance();
          push(TokKind::AndAnd, "&&", pos);
          continue;
        }
        throw SyntaxError("expected '&&'", pos);
      case '|':
        advance();
        if (peek() == '|') {
          advance();
          push(TokKind::OrOr, "||", pos);
          continue;
        }
        throw SyntaxError("expected '||'", pos);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
    }
  }
  Token eof;
  eof.kind = TokKind::Eof;
  eof.text = "<eof>";
  eof.pos = {line, col};
  out.push_back(std::move(eof));
  return out;
}

}  // namespace metaprio::lang
