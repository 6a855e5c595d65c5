#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "theoria/ast.hpp"
#include "theoria/error.hpp"
#include "theoria/lexer.hpp"
#include "theoria/renaming.hpp"

// Recursive-descent parser for `.msl` sources. Grammar:
//
//   file     := { def }
//   def      := NAME ":=" texpr
//   texpr    := "Theory" block
//             | NAME "extended" "by" block
//             | NAME renaming
//             | "combine" NAME "," NAME {"," NAME} "over" NAME
//             | "instance" NAME "of" NAME "via" renaming
//             | "TypeFrom" "(" NAME ")" | "&" NAME
//             | "Homomorphism" "(" NAME ")" | "Substructure" "(" NAME ")"
//   block    := "{" { decl [";"] } "}"
//   decl     := NAME {"," NAME} ":" ("type" | typeexpr)
//             | "axiom" [NAME] (":" | ":=") formula
//             | "Inductive" NAME { ["|"] NAME ":" typeexpr }
//             | NAME "(" pattern {"," pattern} ")" "=" term
//   renaming := "[" NAME "|->" NAME {"," NAME "|->" NAME} "]"
//
// Forward references are rejected; a definition may reference only earlier
// names (or names passed in as external, for multi-file libraries).

namespace theoria {

enum class GenKind { TypeFrom, TermAlgebra, Homomorphism, Substructure };

inline const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::TypeFrom: return "TypeFrom";
    case GenKind::TermAlgebra: return "TermAlgebra";
    case GenKind::Homomorphism: return "Homomorphism";
    case GenKind::Substructure: return "Substructure";
  }
  return "?";
}

struct TheoryExpr {
  struct Literal {
    std::vector<Declaration> decls;
  };
  struct ExtendedBy {
    Name base;
    std::vector<Declaration> decls;
  };
  struct RenameOf {
    Name base;
    Renaming renaming;
  };
  struct CombineOver {
    std::vector<Name> parts;  // >= 2
    Name over;
  };
  struct InstanceOf {
    Name source;
    Name base;
    Renaming via;
  };
  struct GeneratorCall {
    GenKind kind;
    Name arg;
  };

  std::variant<Literal, ExtendedBy, RenameOf, CombineOver, InstanceOf,
               GeneratorCall>
      node;
};

struct Definition {
  Name name;
  TheoryExpr expr;
  SourcePos pos;
};

struct SourceFile {
  std::vector<Definition> definitions;
};

inline bool is_operator_name(const Name& n) {
  if (n.empty()) return false;
  for (char c : n.text)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
  return true;
}

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  SourceFile parse_library(const std::set<Name>& external) {
    SourceFile file;
    std::set<Name> known = external;
    while (!at(Tok::End)) {
      Token name_tok = expect_name("definition name");
      SourcePos pos = name_tok.pos;
      Name name{name_tok.text};
      expect(Tok::Assign, "':='");
      if (known.count(name))
        fail(ErrorKind::Parse, "duplicate definition of '" + name.text + "'",
             pos);
      TheoryExpr expr = parse_texpr(known);
      known.insert(name);
      file.definitions.push_back({name, std::move(expr), pos});
      skip_semis();
    }
    return file;
  }

  FormulaPtr parse_formula_only() {
    FormulaPtr f = parse_formula();
    expect(Tok::End, "end of input");
    return f;
  }

  TermPtr parse_term_only() {
    TermPtr t = parse_term();
    expect(Tok::End, "end of input");
    return t;
  }

  TypePtr parse_type_only() {
    TypePtr t = parse_typeexpr();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t k = 1) const {
    size_t j = i_ + k;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  void advance() {
    if (i_ + 1 < toks_.size()) ++i_;
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(std::string_view kw) const { return cur().is_keyword(kw); }
  bool at_op(std::string_view op) const { return cur().is(Tok::Op, op); }

  [[noreturn]] void err(const std::string& expected) const {
    fail(ErrorKind::Parse,
         "expected " + expected + ", found '" +
             (cur().kind == Tok::End ? "end of input" : cur().text) + "'",
         cur().pos);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) err(what);
    Token t = cur();
    advance();
    return t;
  }

  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) err("'" + std::string(kw) + "'");
    advance();
  }

  bool is_name_token(const Token& t) const {
    return t.kind == Tok::Ident || t.kind == Tok::Op;
  }

  Token expect_name(const std::string& what) {
    if (!is_name_token(cur())) err(what);
    Token t = cur();
    advance();
    return t;
  }

  void skip_semis() {
    while (at(Tok::Semi)) advance();
  }

  // --- theory expressions ------------------------------------------------

  Name theory_ref(const std::set<Name>& known) {
    Token t = expect(Tok::Ident, "theory name");
    Name n{t.text};
    if (!known.count(n))
      fail(ErrorKind::ForwardReference,
           "'" + n.text + "' is not defined yet", t.pos);
    return n;
  }

  TheoryExpr parse_texpr(const std::set<Name>& known) {
    if (at_kw("Theory")) {
      advance();
      return {TheoryExpr::Literal{parse_block()}};
    }
    if (at_kw("combine")) {
      advance();
      std::vector<Name> parts;
      parts.push_back(theory_ref(known));
      expect(Tok::Comma, "','");
      parts.push_back(theory_ref(known));
      while (at(Tok::Comma)) {
        advance();
        parts.push_back(theory_ref(known));
      }
      expect_kw("over");
      Name over = theory_ref(known);
      return {TheoryExpr::CombineOver{std::move(parts), std::move(over)}};
    }
    if (at_kw("instance")) {
      advance();
      Name source = theory_ref(known);
      expect_kw("of");
      Name base = theory_ref(known);
      expect_kw("via");
      Renaming via = parse_renaming();
      return {TheoryExpr::InstanceOf{std::move(source), std::move(base),
                                     std::move(via)}};
    }
    if (at_op("&")) {
      advance();
      return {TheoryExpr::GeneratorCall{GenKind::TermAlgebra,
                                        theory_ref(known)}};
    }
    if (at(Tok::Ident) && peek().is(Tok::LParen) &&
        (cur().text == "TypeFrom" || cur().text == "Homomorphism" ||
         cur().text == "Substructure")) {
      GenKind kind = cur().text == "TypeFrom"        ? GenKind::TypeFrom
                     : cur().text == "Homomorphism" ? GenKind::Homomorphism
                                                     : GenKind::Substructure;
      advance();
      expect(Tok::LParen, "'('");
      Name arg = theory_ref(known);
      expect(Tok::RParen, "')'");
      return {TheoryExpr::GeneratorCall{kind, std::move(arg)}};
    }
    if (at(Tok::Ident)) {
      Name base = theory_ref(known);
      if (at_kw("extended")) {
        advance();
        expect_kw("by");
        return {TheoryExpr::ExtendedBy{std::move(base), parse_block()}};
      }
      if (at(Tok::LBracket))
        return {TheoryExpr::RenameOf{std::move(base), parse_renaming()}};
      err("'extended by' or a renaming after theory name");
    }
    err("theory expression");
  }

  Renaming parse_renaming() {
    SourcePos pos = cur().pos;
    expect(Tok::LBracket, "'['");
    std::map<Name, Name> pairs;
    if (!at(Tok::RBracket)) {
      while (true) {
        Token from = expect_name("name");
        expect(Tok::MapsTo, "'|->'");
        Token to = expect_name("name");
        if (pairs.count(Name{from.text}))
          fail(ErrorKind::InvalidRenaming,
               "duplicate source '" + from.text + "'", from.pos);
        pairs.emplace(Name{from.text}, Name{to.text});
        if (!at(Tok::Comma)) break;
        advance();
      }
    }
    expect(Tok::RBracket, "']'");
    try {
      return Renaming(std::move(pairs));
    } catch (const Error& e) {
      fail(e.kind(), e.what(), pos);
    }
  }

  // --- declarations --------------------------------------------------------

  std::vector<Declaration> parse_block() {
    expect(Tok::LBrace, "'{'");
    std::vector<Declaration> decls;
    int anon_count = 0;
    while (!at(Tok::RBrace)) {
      parse_decl_into(decls, anon_count);
      skip_semis();
    }
    expect(Tok::RBrace, "'}'");
    return decls;
  }

  void parse_decl_into(std::vector<Declaration>& out, int& anon_count) {
    if (at_kw("axiom")) {
      SourcePos pos = cur().pos;
      advance();
      Name name;
      if (is_name_token(cur())) {
        name = Name{cur().text};
        advance();
      } else {
        name = Name{"anon_axiom_" + std::to_string(++anon_count)};
      }
      if (at(Tok::Colon) || at(Tok::Assign))
        advance();
      else
        err("':' or ':=' after axiom name");
      out.push_back(mk::axiom_decl(std::move(name), parse_formula(), pos));
      return;
    }
    if (at_kw("Inductive")) {
      SourcePos pos = cur().pos;
      advance();
      Token name = expect(Tok::Ident, "inductive type name");
      std::vector<InductiveCtor> ctors;
      while (true) {
        if (at(Tok::Pipe)) {
          advance();
        } else if (!(is_name_token(cur()) && peek().is(Tok::Colon))) {
          break;
        }
        Token ctor = expect_name("constructor name");
        expect(Tok::Colon, "':'");
        ctors.push_back({Name{ctor.text}, parse_typeexpr()});
      }
      out.push_back(
          mk::inductive_decl(Name{name.text}, std::move(ctors), pos));
      return;
    }
    if (!is_name_token(cur())) err("declaration");

    Token head = cur();
    SourcePos pos = head.pos;

    // Function definition clause: NAME "(" patterns ")" "=" term.
    if (peek().is(Tok::LParen) && clause_ahead()) {
      advance();
      advance();  // consume NAME "("
      std::vector<TermPtr> patterns;
      if (!at(Tok::RParen)) {
        patterns.push_back(parse_pattern());
        while (at(Tok::Comma)) {
          advance();
          patterns.push_back(parse_pattern());
        }
      }
      expect(Tok::RParen, "')'");
      if (!at_op("=")) err("'=' in function definition");
      advance();
      TermPtr rhs = parse_term();
      attach_clause(out, Name{head.text},
                    mk::apply(OpName{Name{head.text}}, std::move(patterns)),
                    std::move(rhs), pos);
      return;
    }

    std::vector<Name> names{Name{head.text}};
    advance();
    while (at(Tok::Comma)) {
      advance();
      names.push_back(Name{expect_name("name").text});
    }
    expect(Tok::Colon, "':'");
    if (at_kw("type")) {
      advance();
      for (auto& n : names) out.push_back(mk::type_decl(std::move(n), pos));
    } else {
      TypePtr t = parse_typeexpr();
      for (auto& n : names) out.push_back(mk::op_decl(std::move(n), t, pos));
    }
  }

  // Distinguishes `f(x, y) = rhs` from an operation whose type happens to be
  // written in parentheses: scan to the matching ')' and look for '='.
  bool clause_ahead() const {
    size_t j = i_ + 2;  // token after "NAME ("
    int depth = 1;
    while (j < toks_.size() && depth > 0) {
      if (toks_[j].kind == Tok::LParen) ++depth;
      if (toks_[j].kind == Tok::RParen) --depth;
      ++j;
    }
    return j < toks_.size() && toks_[j].is(Tok::Op, "=");
  }

  TermPtr parse_pattern() {
    Token t = expect_name("pattern");
    if (at(Tok::LParen)) {
      advance();
      std::vector<TermPtr> args;
      if (!at(Tok::RParen)) {
        args.push_back(parse_pattern());
        while (at(Tok::Comma)) {
          advance();
          args.push_back(parse_pattern());
        }
      }
      expect(Tok::RParen, "')'");
      return mk::apply(OpName{Name{t.text}}, std::move(args));
    }
    return mk::var(Name{t.text});
  }

  void attach_clause(std::vector<Declaration>& out, const Name& name,
                     TermPtr lhs, TermPtr rhs, SourcePos pos) {
    for (auto& d : out) {
      if (decl_name(d) != name) continue;
      if (const auto* op = std::get_if<OpDecl>(&d.node)) {
        d = mk::def_decl(name, op->type, {{std::move(lhs), std::move(rhs)}},
                         d.pos);
        return;
      }
      if (std::holds_alternative<DefDecl>(d.node)) {
        auto def = std::get<DefDecl>(d.node);
        def.clauses.push_back({std::move(lhs), std::move(rhs)});
        d = {std::move(def), d.pos};
        return;
      }
      fail(ErrorKind::Parse,
           "'" + name.text + "' is not an operation; cannot define it", pos);
    }
    fail(ErrorKind::Parse,
         "function definition for '" + name.text +
             "' lacks a preceding signature in the same block",
         pos);
  }

  // --- types ---------------------------------------------------------------

  TypePtr parse_typeexpr() { return parse_typeexpr_impl(false); }
  TypePtr parse_binder_type() { return parse_typeexpr_impl(true); }

  // In binder position `forall x : T . body`, a dot may either qualify a
  // record field (A.U) or terminate the binder; qualify only when another
  // dot follows the would-be field.
  TypePtr parse_typeexpr_impl(bool binder) {
    TypePtr t = parse_type_atom(binder);
    if (at(Tok::Arrow)) {
      advance();
      return mk::fn({t}, parse_typeexpr_impl(binder));
    }
    if (at(Tok::Question)) {
      advance();
      return mk::pred({t});
    }
    return t;
  }

  TypePtr parse_type_atom(bool binder) {
    if (at(Tok::LParen)) {
      advance();
      std::vector<TypePtr> items;
      items.push_back(parse_typeexpr());
      while (at(Tok::Comma)) {
        advance();
        items.push_back(parse_typeexpr());
      }
      expect(Tok::RParen, "')'");
      if (at(Tok::Arrow)) {
        advance();
        return mk::fn(std::move(items), parse_typeexpr_impl(binder));
      }
      if (at(Tok::Question)) {
        advance();
        return mk::pred(std::move(items));
      }
      if (items.size() == 1) return items[0];
      err("'->' or '?' after tuple type");
    }
    Token name = expect(Tok::Ident, "type");
    if (at(Tok::LParen)) {
      // Uninterpreted type application such as `domain(prime)`.
      advance();
      std::vector<Name> args;
      args.push_back(Name{expect_name("name").text});
      while (at(Tok::Comma)) {
        advance();
        args.push_back(Name{expect_name("name").text});
      }
      expect(Tok::RParen, "')'");
      return mk::type_app(Name{name.text}, std::move(args));
    }
    if (at(Tok::Dot)) {
      bool qualify = peek().kind == Tok::Ident;
      if (binder && qualify) qualify = peek(2).kind == Tok::Dot;
      if (qualify) {
        advance();
        Token field = expect(Tok::Ident, "field name");
        return mk::field_type(Name{name.text}, Name{field.text});
      }
    }
    return mk::sort(Name{name.text});
  }

  // --- terms -----------------------------------------------------------------

  bool term_infix_op() const {
    return at(Tok::Op) && cur().text != "=" && cur().text != "<:";
  }

  // Qualified infix operator ahead: NAME "." OP
  bool qualified_infix_ahead() const {
    return at(Tok::Ident) && peek().is(Tok::Dot) && peek(2).kind == Tok::Op &&
           peek(2).text != "=" && peek(2).text != "<:";
  }

  TermPtr parse_term() {
    TermPtr lhs = parse_juxta();
    while (term_infix_op() || qualified_infix_ahead()) {
      OpName op;
      if (at(Tok::Op)) {
        op = OpName{Name{cur().text}};
        advance();
      } else {
        Name qual{cur().text};
        advance();
        advance();  // '.'
        op = OpName{std::move(qual), Name{cur().text}};
        advance();
      }
      TermPtr rhs = parse_juxta();
      lhs = mk::apply(std::move(op), {lhs, rhs});
    }
    return lhs;
  }

  TermPtr parse_juxta() {
    TermPtr head = parse_primary();
    // Application by juxtaposition (`prime x`), only from a bare name head
    // and never when the next name starts something else.
    if (!std::holds_alternative<Var>(head->node)) return head;
    std::vector<TermPtr> args;
    while (at(Tok::Ident)) {
      Tok after = peek().kind;
      if (after == Tok::Dot || after == Tok::Colon || after == Tok::Assign ||
          after == Tok::LParen || after == Tok::MapsTo)
        break;
      args.push_back(mk::var(Name{cur().text}));
      advance();
    }
    if (args.empty()) return head;
    return mk::apply(OpName{std::get<Var>(head->node).name}, std::move(args));
  }

  TermPtr parse_primary() {
    if (at_kw("case")) return parse_case();
    if (at(Tok::LParen)) {
      advance();
      // Operator section `(*)`, a name reference in macro arguments.
      if (at(Tok::Op) && peek().is(Tok::RParen)) {
        Name op{cur().text};
        advance();
        advance();
        return mk::var(std::move(op));
      }
      TermPtr t = parse_term();
      expect(Tok::RParen, "')'");
      return t;
    }
    Token name = expect(Tok::Ident, "term");
    if (at(Tok::Dot) && (peek().kind == Tok::Ident || peek().kind == Tok::Op)) {
      advance();
      Token field = cur();
      advance();
      OpName op{Name{name.text}, Name{field.text}};
      if (at(Tok::LParen)) return mk::apply(std::move(op), parse_call_args());
      return mk::apply(std::move(op), {});
    }
    if (at(Tok::LParen))
      return mk::apply(OpName{Name{name.text}}, parse_call_args());
    return mk::var(Name{name.text});
  }

  std::vector<TermPtr> parse_call_args() {
    expect(Tok::LParen, "'('");
    std::vector<TermPtr> args;
    if (!at(Tok::RParen)) {
      args.push_back(parse_term());
      while (at(Tok::Comma)) {
        advance();
        args.push_back(parse_term());
      }
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  TermPtr parse_case() {
    expect_kw("case");
    TermPtr scrutinee = parse_term();
    expect_kw("of");
    expect(Tok::LBrace, "'{'");
    std::vector<CaseBranch> branches;
    if (at(Tok::Pipe)) advance();
    while (true) {
      Token ctor = expect_name("constructor pattern");
      std::vector<Name> binders;
      if (at(Tok::LParen)) {
        advance();
        binders.push_back(Name{expect_name("binder").text});
        while (at(Tok::Comma)) {
          advance();
          binders.push_back(Name{expect_name("binder").text});
        }
        expect(Tok::RParen, "')'");
      }
      expect(Tok::Arrow, "'->'");
      branches.push_back({Name{ctor.text}, std::move(binders), parse_term()});
      if (at(Tok::Pipe)) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::RBrace, "'}'");
    return mk::term({Case{std::move(scrutinee), std::move(branches)}});
  }

  // --- formulas ----------------------------------------------------------------

  FormulaPtr parse_formula() {
    if (at_kw("forall")) {
      advance();
      std::vector<Binder> binders;
      while (true) {
        std::vector<Name> group;
        group.push_back(Name{expect(Tok::Ident, "variable").text});
        while (at(Tok::Comma)) {
          advance();
          group.push_back(Name{expect(Tok::Ident, "variable").text});
        }
        expect(Tok::Colon, "':'");
        TypePtr t = parse_binder_type();
        for (auto& v : group) binders.push_back({std::move(v), t});
        if (at(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::Dot, "'.'");
      return mk::forall(std::move(binders), parse_formula());
    }
    return parse_implies();
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (at_kw("implies")) {
      advance();
      return mk::implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (at_kw("or")) {
      advance();
      lhs = mk::lor(std::move(lhs), parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (at_kw("and")) {
      advance();
      lhs = mk::land(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (at_kw("not")) {
      advance();
      return mk::lnot(parse_unary());
    }
    if (at_kw("forall")) return parse_formula();
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (at_kw("defined-in")) {
      advance();
      expect(Tok::LParen, "'('");
      TermPtr t = parse_term();
      expect(Tok::Comma, "','");
      TypePtr ty = parse_typeexpr();
      expect(Tok::RParen, "')'");
      return mk::defined_in(std::move(t), std::move(ty));
    }
    if (at(Tok::LParen)) {
      // Either a parenthesized formula or a parenthesized term beginning a
      // relation; try the formula reading and fall back.
      size_t save = i_;
      bool ok = true;
      FormulaPtr f;
      try {
        advance();
        f = parse_formula();
        if (at(Tok::RParen))
          advance();
        else
          ok = false;
      } catch (const Error&) {
        ok = false;
      }
      if (ok && !at(Tok::Op) && !at(Tok::Dot) && !qualified_infix_ahead())
        return f;
      i_ = save;
    }
    return parse_relational();
  }

  FormulaPtr parse_relational() {
    TermPtr t = parse_term();
    if (at_op("=")) {
      advance();
      return mk::equal(std::move(t), parse_term());
    }
    if (at_op("<:")) {
      advance();
      TypePtr super = parse_typeexpr();
      return mk::subtype(term_as_type(t), std::move(super));
    }
    return finish_atom(std::move(t));
  }

  TypePtr term_as_type(const TermPtr& t) {
    if (const auto* v = std::get_if<Var>(&t->node)) return mk::sort(v->name);
    if (const auto* a = std::get_if<Apply>(&t->node))
      if (a->args.empty() && a->op.qualifier)
        return mk::field_type(*a->op.qualifier, a->op.name);
    fail(ErrorKind::Parse, "expected a type on the left of '<:'", cur().pos);
  }

  // A call whose arguments are all name references, at least one written as
  // an operator section, is a property-macro use.
  FormulaPtr finish_atom(TermPtr t) {
    if (const auto* ap = std::get_if<Apply>(&t->node);
        ap && !ap->op.qualifier && !ap->args.empty()) {
      bool all_names = true;
      bool has_section = false;
      std::vector<OpName> args;
      for (const auto& a : ap->args) {
        if (const auto* v = std::get_if<Var>(&a->node)) {
          args.push_back(OpName{v->name});
          if (is_operator_name(v->name)) has_section = true;
        } else if (const auto* q = std::get_if<Apply>(&a->node);
                   q && q->args.empty() && q->op.qualifier) {
          args.push_back(q->op);
        } else {
          all_names = false;
          break;
        }
      }
      if (all_names && has_section)
        return mk::macro(ap->op.name, std::move(args));
    }
    return mk::atom(std::move(t));
  }
};

}  // namespace detail

inline SourceFile parse_library(const std::string& text,
                                const std::set<Name>& external = {}) {
  return detail::Parser(text).parse_library(external);
}

inline FormulaPtr parse_formula(const std::string& text) {
  return detail::Parser(text).parse_formula_only();
}

inline TermPtr parse_term(const std::string& text) {
  return detail::Parser(text).parse_term_only();
}

inline TypePtr parse_type(const std::string& text) {
  return detail::Parser(text).parse_type_only();
}

}  // namespace theoria
