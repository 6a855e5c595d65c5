#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "theoria/error.hpp"
#include "theoria/names.hpp"

namespace theoria {

enum class Tok {
  Ident,
  Keyword,
  Op,       // fixed operator class: * + ** - / = & # <= <:
  Assign,   // :=
  MapsTo,   // |->
  Arrow,    // ->
  Question, // ?
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Dot,
  Pipe,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;

  bool is(Tok k) const { return kind == k; }
  bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view kw) const {
    return kind == Tok::Keyword && text == kw;
  }
};

inline const std::set<std::string, std::less<>>& keyword_set() {
  static const std::set<std::string, std::less<>> kws = {
      "Theory", "combine", "extended", "by",   "over",    "axiom",
      "forall", "Inductive", "case",   "of",   "instance", "via",
      "type",   "data",    "not",      "and",  "or",      "implies",
      "defined-in"};
  return kws;
}

// UTF-8 text in, token stream with positions out. `%` starts a comment that
// runs to end of line.
inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  const size_t n = text.size();

  auto peek = [&](size_t k) -> char { return i + k < n ? text[i + k] : '\0'; };
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k && i < n; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::string tok_text, SourcePos pos) {
    out.push_back({kind, std::move(tok_text), pos});
  };

  auto is_ident_start = [](char c) {
    // `$` appears only in macro-table templates ($1, $S1).
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           c == '$';
  };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'' || c == '$';
  };
  auto is_digit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  };

  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < n && text[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};

    auto is_op_char = [](char ch) {
      return ch == '*' || ch == '+' || ch == '-' || ch == '/' || ch == '&' ||
             ch == '#' || ch == '=' || ch == '<' || ch == '>';
    };

    if (is_ident_start(c)) {
      size_t start = i;
      // Identifiers may embed operator symbols after an underscore, as in
      // `associative_*` or `leftIdentity_+_0`.
      while (i < n) {
        if (is_ident_char(text[i])) {
          advance(1);
        } else if (text[i - 1] == '_' && is_op_char(text[i])) {
          while (i < n && is_op_char(text[i])) advance(1);
        } else {
          break;
        }
      }
      std::string word = text.substr(start, i - start);
      // `defined-in` is the one keyword containing a hyphen.
      if (word == "defined" && peek(0) == '-' && peek(1) == 'i' &&
          peek(2) == 'n' && !is_ident_char(peek(3))) {
        advance(3);
        push(Tok::Keyword, "defined-in", pos);
        continue;
      }
      if (keyword_set().count(word))
        push(Tok::Keyword, std::move(word), pos);
      else
        push(Tok::Ident, std::move(word), pos);
      continue;
    }
    if (is_digit(c)) {
      size_t start = i;
      while (i < n && (is_digit(text[i]) || text[i] == '\'')) advance(1);
      push(Tok::Ident, text.substr(start, i - start), pos);
      continue;
    }

    auto with_primes = [&](std::string base) {
      while (i < n && text[i] == '\'') {
        base += '\'';
        advance(1);
      }
      return base;
    };

    switch (c) {
      case '{': advance(1); push(Tok::LBrace, "{", pos); continue;
      case '}': advance(1); push(Tok::RBrace, "}", pos); continue;
      case '[': advance(1); push(Tok::LBracket, "[", pos); continue;
      case ']': advance(1); push(Tok::RBracket, "]", pos); continue;
      case '(': advance(1); push(Tok::LParen, "(", pos); continue;
      case ')': advance(1); push(Tok::RParen, ")", pos); continue;
      case ',': advance(1); push(Tok::Comma, ",", pos); continue;
      case ';': advance(1); push(Tok::Semi, ";", pos); continue;
      case '.': advance(1); push(Tok::Dot, ".", pos); continue;
      case '?': advance(1); push(Tok::Question, "?", pos); continue;
      case ':':
        if (peek(1) == '=') {
          advance(2);
          push(Tok::Assign, ":=", pos);
        } else {
          advance(1);
          push(Tok::Colon, ":", pos);
        }
        continue;
      case '|':
        if (peek(1) == '-' && peek(2) == '>') {
          advance(3);
          push(Tok::MapsTo, "|->", pos);
        } else {
          advance(1);
          push(Tok::Pipe, "|", pos);
        }
        continue;
      case '-':
        if (peek(1) == '>') {
          advance(2);
          push(Tok::Arrow, "->", pos);
        } else {
          advance(1);
          push(Tok::Op, with_primes("-"), pos);
        }
        continue;
      case '*':
        if (peek(1) == '*') {
          advance(2);
          push(Tok::Op, with_primes("**"), pos);
        } else {
          advance(1);
          push(Tok::Op, with_primes("*"), pos);
        }
        continue;
      case '<':
        if (peek(1) == ':') {
          advance(2);
          push(Tok::Op, "<:", pos);
        } else if (peek(1) == '=') {
          advance(2);
          push(Tok::Op, with_primes("<="), pos);
        } else {
          fail(ErrorKind::Lex, "unrecognized character '<'", pos);
        }
        continue;
      case '+':
      case '/':
      case '&':
      case '#':
      case '=':
        advance(1);
        push(Tok::Op, with_primes(std::string(1, c)), pos);
        continue;
      default:
        fail(ErrorKind::Lex,
             std::string("unrecognized character '") + c + "'", pos);
    }
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

}  // namespace theoria
