#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "theoria/ast.hpp"
#include "theoria/error.hpp"
#include "theoria/macros.hpp"

// Mechanical universal-algebra constructions over elaborated presentations:
// the model record type, the term algebra, the homomorphism theory, and the
// substructure theory. Each is a visitor over one generic declaration fold.

namespace theoria {

enum class ArtifactKind { ModelRecord, TermAlgebra, HomTheory, SubTheory };

struct GeneratedArtifact {
  ArtifactKind kind;
  Name origin;
  TypePtr type;                               // ModelRecord / TermAlgebra
  std::optional<TheoryPresentation> theory;   // HomTheory / SubTheory
};

// Per-kind transformation for one pass over a presentation's declarations.
// Kinds without a handler raise UnsupportedDeclaration, which is exactly the
// generators' rejection rule for concrete theories.
template <typename Out>
struct DeclFold {
  std::function<Out(const TypeDecl&)> on_type;
  std::function<Out(const OpDecl&)> on_op;
  std::function<Out(const AxiomDecl&)> on_axiom;
  std::function<Out(const InductiveDecl&)> on_inductive;
  std::function<Out(const DefDecl&)> on_def;
  std::function<Out(const TypeDefDecl&)> on_typedef;
};

template <typename Out>
std::vector<Out> traverse_theory(const TheoryPresentation& p,
                                 const DeclFold<Out>& fold) {
  std::vector<Out> out;
  for (const auto& d : p.decls) {
    auto run = [&](const auto& handler, const auto& node) {
      if (!handler)
        fail(ErrorKind::UnsupportedDeclaration,
             std::string(decl_kind_name(d)) + " declaration '" +
                 decl_name(d).text + "' is not supported here");
      out.push_back(handler(node));
    };
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, TypeDecl>) run(fold.on_type, node);
          else if constexpr (std::is_same_v<T, OpDecl>) run(fold.on_op, node);
          else if constexpr (std::is_same_v<T, AxiomDecl>) run(fold.on_axiom, node);
          else if constexpr (std::is_same_v<T, InductiveDecl>) run(fold.on_inductive, node);
          else if constexpr (std::is_same_v<T, DefDecl>) run(fold.on_def, node);
          else run(fold.on_typedef, node);
        },
        d.node);
  }
  return out;
}

// Rebuilding variant of the traversal: handlers may drop (nullopt) or
// replace declarations.
inline TheoryPresentation map_theory(
    const TheoryPresentation& p,
    const DeclFold<std::optional<Declaration>>& fold) {
  TheoryPresentation out;
  out.name = p.name;
  for (auto& d : traverse_theory(p, fold))
    if (d) out.decls.push_back(std::move(*d));
  return out;
}

inline DeclFold<std::optional<Declaration>> identity_fold() {
  DeclFold<std::optional<Declaration>> f;
  f.on_type = [](const TypeDecl& d) { return Declaration{d, {}}; };
  f.on_op = [](const OpDecl& d) { return Declaration{d, {}}; };
  f.on_axiom = [](const AxiomDecl& d) { return Declaration{d, {}}; };
  f.on_inductive = [](const InductiveDecl& d) { return Declaration{d, {}}; };
  f.on_def = [](const DefDecl& d) { return Declaration{d, {}}; };
  f.on_typedef = [](const TypeDefDecl& d) { return Declaration{d, {}}; };
  return f;
}

// --- model record type --------------------------------------------------

// One field per declaration: types become `type` fields, operations keep
// their signatures, axioms become ProofOf fields.
inline TypePtr gen_record_type(const TheoryPresentation& p) {
  DeclFold<RecordField> fold;
  fold.on_type = [](const TypeDecl& d) {
    return RecordField{d.name, mk::kind()};
  };
  fold.on_op = [](const OpDecl& d) { return RecordField{d.name, d.type}; };
  fold.on_axiom = [](const AxiomDecl& d) {
    return RecordField{d.name, mk::proof_of(d.body)};
  };
  return mk::type({RecordType{traverse_theory(p, fold)}});
}

// --- term algebra ---------------------------------------------------------

namespace detail {

inline Name sole_sort(const TheoryPresentation& p, const char* which) {
  std::vector<Name> sorts;
  for (const auto& d : p.decls)
    if (const auto* t = std::get_if<TypeDecl>(&d.node)) sorts.push_back(t->name);
  if (sorts.size() != 1)
    fail(ErrorKind::NotSingleSorted,
         std::string(which) + " requires exactly one sort; '" + p.name.text +
             "' declares " + std::to_string(sorts.size()));
  return sorts[0];
}

inline Name fresh_symbol(const Name& base, const std::set<Name>& avoid) {
  if (!avoid.count(base)) return base;
  return fresh_name(base, avoid);
}

}  // namespace detail

// The inductive type of free terms over a single-sorted signature: one
// constructor `#op` per operation, every occurrence of the sort replaced by
// the data binder.
inline TypePtr gen_term_algebra(const TheoryPresentation& p) {
  struct CtorOrNothing {
    std::optional<DataCtor> ctor;
  };
  DeclFold<CtorOrNothing> fold;
  fold.on_type = [](const TypeDecl&) { return CtorOrNothing{}; };
  fold.on_axiom = [](const AxiomDecl&) { return CtorOrNothing{}; };

  Name sort = detail::sole_sort(p, "term algebra");
  Name binder = detail::fresh_symbol(Name{"X"}, symbols_of(p));

  auto to_binder = [&](const TypePtr& t, const Name& op) -> TypePtr {
    const auto* sr = std::get_if<SortRef>(&t->node);
    if (!sr || sr->name != sort)
      fail(ErrorKind::ForeignSort,
           "operation '" + op.text + "' of '" + p.name.text +
               "' mentions a sort other than '" + sort.text + "'");
    return mk::sort(binder);
  };

  fold.on_op = [&](const OpDecl& d) -> CtorOrNothing {
    Name cname{"#" + d.name.text};
    if (const auto* fn = std::get_if<FunctionType>(&d.type->node)) {
      std::vector<TypePtr> args;
      for (const auto& a : fn->args) args.push_back(to_binder(a, d.name));
      return {DataCtor{cname, mk::fn(std::move(args),
                                     to_binder(fn->result, d.name))}};
    }
    if (std::holds_alternative<SortRef>(d.type->node))
      return {DataCtor{cname, to_binder(d.type, d.name)}};
    fail(ErrorKind::UnsupportedDeclaration,
         "operation '" + d.name.text +
             "' contributes no term-algebra constructor");
  };

  std::vector<DataCtor> ctors;
  for (auto& c : traverse_theory(p, fold))
    if (c.ctor) ctors.push_back(std::move(*c.ctor));
  return mk::type({DataType{binder, std::move(ctors)}});
}

// --- homomorphism theory ---------------------------------------------------

namespace detail {

struct HomNames {
  Name record_type;
  Name model_a;
  Name model_b;
  std::map<Name, Name> per_sort_fn;  // sort -> mapping function name
};

inline std::vector<Name> sorts_of(const TheoryPresentation& p) {
  std::vector<Name> sorts;
  for (const auto& d : p.decls)
    if (const auto* t = std::get_if<TypeDecl>(&d.node)) sorts.push_back(t->name);
  return sorts;
}

inline Name expect_plain_sort(const TypePtr& t, const Name& op,
                              const Name& theory) {
  const auto* sr = std::get_if<SortRef>(&t->node);
  if (!sr)
    fail(ErrorKind::UnsupportedDeclaration,
         "operation '" + op.text + "' of '" + theory.text +
             "' has a higher-order signature");
  return sr->name;
}

}  // namespace detail

// Two models and one function per sort preserving every operation, constant,
// and relation (relations in the implication direction A to B).
inline TheoryPresentation gen_homomorphism(const TheoryPresentation& p) {
  TypePtr record = gen_record_type(p);
  std::vector<Name> sorts = detail::sorts_of(p);
  std::set<Name> taken = symbols_of(p);

  detail::HomNames names;
  names.record_type = Name{p.name.text + "Type"};
  names.model_a = detail::fresh_symbol(Name{"A"}, taken);
  taken.insert(names.model_a);
  names.model_b = detail::fresh_symbol(Name{"B"}, taken);
  taken.insert(names.model_b);
  for (const auto& s : sorts) {
    Name fn = sorts.size() == 1 ? Name{"f"} : Name{"f_" + s.text};
    fn = detail::fresh_symbol(fn, taken);
    taken.insert(fn);
    names.per_sort_fn.emplace(s, fn);
  }

  TheoryPresentation out;
  out.name = Name{p.name.text + "H"};
  out.decls.push_back(mk::typedef_decl(names.record_type, record));
  out.decls.push_back(mk::op_decl(names.model_a, mk::sort(names.record_type)));
  out.decls.push_back(mk::op_decl(names.model_b, mk::sort(names.record_type)));
  for (const auto& s : sorts)
    out.decls.push_back(mk::op_decl(
        names.per_sort_fn.at(s),
        mk::fn({mk::field_type(names.model_a, s)},
               mk::field_type(names.model_b, s))));

  auto fn_of = [&](const Name& sort) { return names.per_sort_fn.at(sort); };
  auto a_ref = [&](const Name& field) {
    return OpName{names.model_a, field};
  };
  auto b_ref = [&](const Name& field) {
    return OpName{names.model_b, field};
  };

  DeclFold<std::optional<Declaration>> fold;
  fold.on_type = [](const TypeDecl&) { return std::nullopt; };
  fold.on_axiom = [](const AxiomDecl&) { return std::nullopt; };
  fold.on_op = [&](const OpDecl& d) -> std::optional<Declaration> {
    Name axiom_name{"pres_" + d.name.text};
    if (const auto* sr = std::get_if<SortRef>(&d.type->node)) {
      // Constant: f(A.c) = B.c.
      TermPtr lhs = mk::apply(OpName{fn_of(sr->name)},
                              {mk::apply(a_ref(d.name), {})});
      return mk::axiom_decl(axiom_name,
                            mk::equal(lhs, mk::apply(b_ref(d.name), {})));
    }
    if (const auto* fn = std::get_if<FunctionType>(&d.type->node)) {
      std::vector<Name> arg_sorts;
      for (const auto& a : fn->args)
        arg_sorts.push_back(detail::expect_plain_sort(a, d.name, p.name));
      Name result_sort =
          detail::expect_plain_sort(fn->result, d.name, p.name);
      auto vars = detail::fresh_vars(arg_sorts.size(), taken);
      std::vector<Binder> binders;
      std::vector<TermPtr> a_args, mapped_args;
      for (size_t i = 0; i < arg_sorts.size(); ++i) {
        binders.push_back(
            {vars[i], mk::field_type(names.model_a, arg_sorts[i])});
        a_args.push_back(mk::var(vars[i]));
        mapped_args.push_back(
            mk::apply(OpName{fn_of(arg_sorts[i])}, {mk::var(vars[i])}));
      }
      TermPtr lhs = mk::apply(OpName{fn_of(result_sort)},
                              {mk::apply(a_ref(d.name), std::move(a_args))});
      TermPtr rhs = mk::apply(b_ref(d.name), std::move(mapped_args));
      return mk::axiom_decl(axiom_name,
                            mk::forall(std::move(binders),
                                       mk::equal(std::move(lhs), std::move(rhs))));
    }
    if (const auto* pr = std::get_if<PredicateType>(&d.type->node)) {
      std::vector<Name> arg_sorts;
      for (const auto& a : pr->args)
        arg_sorts.push_back(detail::expect_plain_sort(a, d.name, p.name));
      auto vars = detail::fresh_vars(arg_sorts.size(), taken);
      std::vector<Binder> binders;
      std::vector<TermPtr> a_args, mapped_args;
      for (size_t i = 0; i < arg_sorts.size(); ++i) {
        binders.push_back(
            {vars[i], mk::field_type(names.model_a, arg_sorts[i])});
        a_args.push_back(mk::var(vars[i]));
        mapped_args.push_back(
            mk::apply(OpName{fn_of(arg_sorts[i])}, {mk::var(vars[i])}));
      }
      FormulaPtr body = mk::implies(
          mk::atom(mk::apply(a_ref(d.name), std::move(a_args))),
          mk::atom(mk::apply(b_ref(d.name), std::move(mapped_args))));
      return mk::axiom_decl(axiom_name,
                            mk::forall(std::move(binders), std::move(body)));
    }
    fail(ErrorKind::UnsupportedDeclaration,
         "operation '" + d.name.text + "' has an unsupported signature");
  };

  for (auto& d : traverse_theory(p, fold))
    if (d) out.decls.push_back(std::move(*d));
  return out;
}

// --- substructure theory -----------------------------------------------------

// One model, a subtype V of its carrier, and per-operation closure axioms
// stated with the definedness predicate; relations restrict automatically.
inline TheoryPresentation gen_substructure(const TheoryPresentation& p) {
  TypePtr record = gen_record_type(p);
  Name sort = detail::sole_sort(p, "substructure");
  std::set<Name> taken = symbols_of(p);

  Name record_type{p.name.text + "Type"};
  Name model = detail::fresh_symbol(Name{"A"}, taken);
  taken.insert(model);
  Name sub = detail::fresh_symbol(Name{"V"}, taken);
  taken.insert(sub);

  TheoryPresentation out;
  out.name = Name{"Sub" + p.name.text};
  out.decls.push_back(mk::typedef_decl(record_type, record));
  out.decls.push_back(mk::op_decl(model, mk::sort(record_type)));
  out.decls.push_back(mk::type_decl(sub));
  out.decls.push_back(mk::axiom_decl(
      Name{"subtype_" + sub.text},
      mk::subtype(mk::sort(sub), mk::field_type(model, sort))));

  DeclFold<std::optional<Declaration>> fold;
  fold.on_type = [](const TypeDecl&) { return std::nullopt; };
  fold.on_axiom = [](const AxiomDecl&) { return std::nullopt; };
  fold.on_op = [&](const OpDecl& d) -> std::optional<Declaration> {
    Name axiom_name{"pres_" + d.name.text};
    if (std::holds_alternative<SortRef>(d.type->node)) {
      return mk::axiom_decl(
          axiom_name, mk::defined_in(mk::apply(OpName{model, d.name}, {}),
                                     mk::sort(sub)));
    }
    if (const auto* fn = std::get_if<FunctionType>(&d.type->node)) {
      auto vars = detail::fresh_vars(fn->args.size(), taken);
      std::vector<Binder> binders;
      std::vector<TermPtr> args;
      for (size_t i = 0; i < fn->args.size(); ++i) {
        detail::expect_plain_sort(fn->args[i], d.name, p.name);
        binders.push_back({vars[i], mk::sort(sub)});
        args.push_back(mk::var(vars[i]));
      }
      return mk::axiom_decl(
          axiom_name,
          mk::forall(std::move(binders),
                     mk::defined_in(
                         mk::apply(OpName{model, d.name}, std::move(args)),
                         mk::sort(sub))));
    }
    if (std::holds_alternative<PredicateType>(d.type->node))
      return std::nullopt;  // relations restrict automatically
    fail(ErrorKind::UnsupportedDeclaration,
         "operation '" + d.name.text + "' has an unsupported signature");
  };

  for (auto& d : traverse_theory(p, fold))
    if (d) out.decls.push_back(std::move(*d));
  return out;
}

}  // namespace theoria
