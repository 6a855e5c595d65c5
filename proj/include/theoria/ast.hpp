#pragma once

#include <memory>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "theoria/error.hpp"
#include "theoria/names.hpp"

// The data model for theory presentations. All nodes are immutable after
// construction and shared by pointer; copying a presentation is cheap.
//
// Canonical term forms: a bare identifier reference is always a Var (the
// parser cannot tell a bound variable from a declared constant, so `0` in
// `x + 0` is Var{"0"}); Apply is used for applications and for any
// record-qualified reference, including nullary ones like `A.e`.

namespace theoria {

struct TypeExpr;
struct Term;
struct Formula;

using TypePtr = std::shared_ptr<const TypeExpr>;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// --- types ------------------------------------------------------------

struct SortRef {
  Name name;
};

// `A.U`: field of a record-typed value used as a type.
struct FieldTypeRef {
  Name record;
  Name field;
};

struct FunctionType {
  std::vector<TypePtr> args;  // nonempty
  TypePtr result;
};

struct PredicateType {
  std::vector<TypePtr> args;  // nonempty
};

// The kind `type` (record fields like `U : type`).
struct TypeKind {};

struct RecordField {
  Name name;
  TypePtr type;
};

struct RecordType {
  std::vector<RecordField> fields;  // later fields may reference earlier ones
};

struct DataCtor {
  Name name;
  TypePtr type;
};

// `data X . #e : X | #* : (X, X) -> X`; the binder is bound in ctor types.
struct DataType {
  Name binder;
  std::vector<DataCtor> ctors;
};

struct ProofOf {
  FormulaPtr body;
};

// Uninterpreted type-level application, e.g. `domain(prime)`.
struct TypeApp {
  Name head;
  std::vector<Name> args;
};

struct TypeExpr {
  std::variant<SortRef, FunctionType, PredicateType, TypeKind, RecordType,
               DataType, ProofOf, FieldTypeRef, TypeApp>
      node;
};

// --- terms ------------------------------------------------------------

struct Var {
  Name name;
};

struct Apply {
  OpName op;
  std::vector<TermPtr> args;
};

struct CaseBranch {
  Name ctor;
  std::vector<Name> binders;  // bound in body
  TermPtr body;
};

struct Case {
  TermPtr scrutinee;
  std::vector<CaseBranch> branches;
};

struct Term {
  std::variant<Var, Apply, Case> node;
};

// --- formulas ---------------------------------------------------------

struct Equal {
  TermPtr lhs;
  TermPtr rhs;
};

struct Binder {
  Name var;
  TypePtr type;
};

struct Forall {
  std::vector<Binder> binders;  // nonempty; names pairwise distinct
  FormulaPtr body;
};

struct Not {
  FormulaPtr body;
};

struct And {
  FormulaPtr lhs, rhs;
};

struct Or {
  FormulaPtr lhs, rhs;
};

struct Implies {
  FormulaPtr lhs, rhs;
};

struct DefinedIn {
  TermPtr term;
  TypePtr type;
};

struct Subtype {
  TypePtr sub;
  TypePtr super;
};

// Unexpanded axiom schema call such as `associative((*))`.
struct PropertyMacro {
  Name name;
  std::vector<OpName> args;
};

// A term used as a proposition (predicate application such as `R(x, y)`).
struct Atom {
  TermPtr term;
};

struct Formula {
  std::variant<Equal, Forall, Not, And, Or, Implies, DefinedIn, Subtype,
               PropertyMacro, Atom>
      node;
};

// --- declarations -----------------------------------------------------

struct TypeDecl {
  Name name;
};

struct OpDecl {
  Name name;
  TypePtr type;
};

struct AxiomDecl {
  Name name;
  FormulaPtr body;
};

struct InductiveCtor {
  Name name;
  TypePtr type;
};

struct InductiveDecl {
  Name name;
  std::vector<InductiveCtor> ctors;
};

struct DefClause {
  TermPtr lhs;  // Apply of the defined name to patterns
  TermPtr rhs;
};

struct DefDecl {
  Name name;
  TypePtr type;
  std::vector<DefClause> clauses;
};

// `type N = τ`; produced by the generators (TypeFrom stored expanded),
// never written in user source.
struct TypeDefDecl {
  Name name;
  TypePtr def;
};

struct Declaration {
  std::variant<TypeDecl, OpDecl, AxiomDecl, InductiveDecl, DefDecl, TypeDefDecl>
      node;
  SourcePos pos{};
};

inline const Name& decl_name(const Declaration& d) {
  return std::visit([](const auto& n) -> const Name& { return n.name; },
                    d.node);
}

inline const char* decl_kind_name(const Declaration& d) {
  struct V {
    const char* operator()(const TypeDecl&) { return "type"; }
    const char* operator()(const OpDecl&) { return "op"; }
    const char* operator()(const AxiomDecl&) { return "axiom"; }
    const char* operator()(const InductiveDecl&) { return "inductive"; }
    const char* operator()(const DefDecl&) { return "def"; }
    const char* operator()(const TypeDefDecl&) { return "typedef"; }
  };
  return std::visit(V{}, d.node);
}

// --- presentations ----------------------------------------------------

struct TheoryPresentation {
  Name name;
  std::vector<Declaration> decls;

  const Declaration* find(const Name& n) const {
    for (const auto& d : decls)
      if (decl_name(d) == n) return &d;
    return nullptr;
  }
};

// All declared names: types, ops, axioms, inductive types and their
// constructors, definitions.
inline std::set<Name> symbols_of(const TheoryPresentation& p) {
  std::set<Name> out;
  for (const auto& d : p.decls) {
    out.insert(decl_name(d));
    if (const auto* ind = std::get_if<InductiveDecl>(&d.node))
      for (const auto& c : ind->ctors) out.insert(c.name);
  }
  return out;
}

// --- construction helpers ----------------------------------------------

namespace mk {

inline TypePtr type(TypeExpr t) {
  return std::make_shared<const TypeExpr>(std::move(t));
}
inline TermPtr term(Term t) { return std::make_shared<const Term>(std::move(t)); }
inline FormulaPtr formula(Formula f) {
  return std::make_shared<const Formula>(std::move(f));
}

inline TypePtr sort(Name n) { return type({SortRef{std::move(n)}}); }
inline TypePtr field_type(Name record, Name field) {
  return type({FieldTypeRef{std::move(record), std::move(field)}});
}
inline TypePtr fn(std::vector<TypePtr> args, TypePtr result) {
  return type({FunctionType{std::move(args), std::move(result)}});
}
inline TypePtr pred(std::vector<TypePtr> args) {
  return type({PredicateType{std::move(args)}});
}
inline TypePtr kind() { return type({TypeKind{}}); }
inline TypePtr proof_of(FormulaPtr body) {
  return type({ProofOf{std::move(body)}});
}
inline TypePtr type_app(Name head, std::vector<Name> args) {
  return type({TypeApp{std::move(head), std::move(args)}});
}

inline TermPtr var(Name n) { return term({Var{std::move(n)}}); }
inline TermPtr apply(OpName op, std::vector<TermPtr> args) {
  return term({Apply{std::move(op), std::move(args)}});
}

inline FormulaPtr equal(TermPtr lhs, TermPtr rhs) {
  return formula({Equal{std::move(lhs), std::move(rhs)}});
}
inline FormulaPtr forall(std::vector<Binder> binders, FormulaPtr body) {
  return formula({Forall{std::move(binders), std::move(body)}});
}
inline FormulaPtr lnot(FormulaPtr body) {
  return formula({Not{std::move(body)}});
}
inline FormulaPtr land(FormulaPtr l, FormulaPtr r) {
  return formula({And{std::move(l), std::move(r)}});
}
inline FormulaPtr lor(FormulaPtr l, FormulaPtr r) {
  return formula({Or{std::move(l), std::move(r)}});
}
inline FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
  return formula({Implies{std::move(l), std::move(r)}});
}
inline FormulaPtr defined_in(TermPtr t, TypePtr ty) {
  return formula({DefinedIn{std::move(t), std::move(ty)}});
}
inline FormulaPtr subtype(TypePtr sub, TypePtr super) {
  return formula({Subtype{std::move(sub), std::move(super)}});
}
inline FormulaPtr macro(Name name, std::vector<OpName> args) {
  return formula({PropertyMacro{std::move(name), std::move(args)}});
}
inline FormulaPtr atom(TermPtr t) { return formula({Atom{std::move(t)}}); }

inline Declaration type_decl(Name n, SourcePos pos = {}) {
  return {TypeDecl{std::move(n)}, pos};
}
inline Declaration op_decl(Name n, TypePtr t, SourcePos pos = {}) {
  return {OpDecl{std::move(n), std::move(t)}, pos};
}
inline Declaration axiom_decl(Name n, FormulaPtr f, SourcePos pos = {}) {
  return {AxiomDecl{std::move(n), std::move(f)}, pos};
}
inline Declaration inductive_decl(Name n, std::vector<InductiveCtor> cs,
                                  SourcePos pos = {}) {
  return {InductiveDecl{std::move(n), std::move(cs)}, pos};
}
inline Declaration def_decl(Name n, TypePtr t, std::vector<DefClause> cls,
                            SourcePos pos = {}) {
  return {DefDecl{std::move(n), std::move(t), std::move(cls)}, pos};
}
inline Declaration typedef_decl(Name n, TypePtr t, SourcePos pos = {}) {
  return {TypeDefDecl{std::move(n), std::move(t)}, pos};
}

}  // namespace mk

}  // namespace theoria
