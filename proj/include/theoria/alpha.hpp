#pragma once

#include <map>

#include "theoria/ast.hpp"

// Intensional equality: same structure, same free names, bodies equal up to
// a consistent renaming of bound variables. No semantic reasoning (reordered
// conjuncts or binders are NOT equal).

namespace theoria {

namespace detail {

struct AlphaEnv {
  std::map<Name, int> left, right;
  int next = 0;

  void bind(const Name& a, const Name& b) {
    left[a] = next;
    right[b] = next;
    ++next;
  }
};

inline bool alpha_name(const AlphaEnv& env, const Name& a, const Name& b) {
  auto la = env.left.find(a);
  auto rb = env.right.find(b);
  bool ba = la != env.left.end();
  bool bb = rb != env.right.end();
  if (ba != bb) return false;
  if (ba) return la->second == rb->second;
  return a == b;
}

inline bool alpha_op(const AlphaEnv& env, const OpName& a, const OpName& b) {
  if (a.qualifier.has_value() != b.qualifier.has_value()) return false;
  if (a.qualifier) {
    if (!alpha_name(env, *a.qualifier, *b.qualifier)) return false;
    return a.name == b.name;  // field names compare literally
  }
  return alpha_name(env, a.name, b.name);
}

bool alpha_type(AlphaEnv env, const TypePtr& a, const TypePtr& b);
bool alpha_term(AlphaEnv env, const TermPtr& a, const TermPtr& b);
bool alpha_formula(AlphaEnv env, const FormulaPtr& a, const FormulaPtr& b);
bool alpha_pattern(AlphaEnv& env, const TermPtr& a, const TermPtr& b);

inline bool alpha_term(AlphaEnv env, const TermPtr& a, const TermPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* va = std::get_if<Var>(&a->node)) {
    const auto& vb = std::get<Var>(b->node);
    return alpha_name(env, va->name, vb.name);
  }
  if (const auto* pa = std::get_if<Apply>(&a->node)) {
    const auto& pb = std::get<Apply>(b->node);
    if (!alpha_op(env, pa->op, pb.op)) return false;
    if (pa->args.size() != pb.args.size()) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!alpha_term(env, pa->args[i], pb.args[i])) return false;
    return true;
  }
  const auto& ca = std::get<Case>(a->node);
  const auto& cb = std::get<Case>(b->node);
  if (!alpha_term(env, ca.scrutinee, cb.scrutinee)) return false;
  if (ca.branches.size() != cb.branches.size()) return false;
  for (size_t i = 0; i < ca.branches.size(); ++i) {
    const auto& ba = ca.branches[i];
    const auto& bb = cb.branches[i];
    if (!alpha_name(env, ba.ctor, bb.ctor)) return false;
    if (ba.binders.size() != bb.binders.size()) return false;
    AlphaEnv inner = env;
    for (size_t j = 0; j < ba.binders.size(); ++j)
      inner.bind(ba.binders[j], bb.binders[j]);
    if (!alpha_term(inner, ba.body, bb.body)) return false;
  }
  return true;
}

inline bool alpha_type(AlphaEnv env, const TypePtr& a, const TypePtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* sa = std::get_if<SortRef>(&a->node))
    return alpha_name(env, sa->name, std::get<SortRef>(b->node).name);
  if (const auto* fa = std::get_if<FieldTypeRef>(&a->node)) {
    const auto& fb = std::get<FieldTypeRef>(b->node);
    return alpha_name(env, fa->record, fb.record) && fa->field == fb.field;
  }
  if (const auto* fa = std::get_if<FunctionType>(&a->node)) {
    const auto& fb = std::get<FunctionType>(b->node);
    if (fa->args.size() != fb.args.size()) return false;
    for (size_t i = 0; i < fa->args.size(); ++i)
      if (!alpha_type(env, fa->args[i], fb.args[i])) return false;
    return alpha_type(env, fa->result, fb.result);
  }
  if (const auto* pa = std::get_if<PredicateType>(&a->node)) {
    const auto& pb = std::get<PredicateType>(b->node);
    if (pa->args.size() != pb.args.size()) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!alpha_type(env, pa->args[i], pb.args[i])) return false;
    return true;
  }
  if (std::holds_alternative<TypeKind>(a->node)) return true;
  if (const auto* ra = std::get_if<RecordType>(&a->node)) {
    const auto& rb = std::get<RecordType>(b->node);
    if (ra->fields.size() != rb.fields.size()) return false;
    for (size_t i = 0; i < ra->fields.size(); ++i) {
      if (ra->fields[i].name != rb.fields[i].name) return false;
      if (!alpha_type(env, ra->fields[i].type, rb.fields[i].type))
        return false;
    }
    return true;
  }
  if (const auto* da = std::get_if<DataType>(&a->node)) {
    const auto& db = std::get<DataType>(b->node);
    if (da->ctors.size() != db.ctors.size()) return false;
    AlphaEnv inner = env;
    inner.bind(da->binder, db.binder);
    for (size_t i = 0; i < da->ctors.size(); ++i) {
      if (da->ctors[i].name != db.ctors[i].name) return false;
      if (!alpha_type(inner, da->ctors[i].type, db.ctors[i].type))
        return false;
    }
    return true;
  }
  if (const auto* pa = std::get_if<ProofOf>(&a->node))
    return alpha_formula(env, pa->body, std::get<ProofOf>(b->node).body);
  const auto& ta = std::get<TypeApp>(a->node);
  const auto& tb = std::get<TypeApp>(b->node);
  if (!alpha_name(env, ta.head, tb.head)) return false;
  if (ta.args.size() != tb.args.size()) return false;
  for (size_t i = 0; i < ta.args.size(); ++i)
    if (!alpha_name(env, ta.args[i], tb.args[i])) return false;
  return true;
}

inline bool alpha_formula(AlphaEnv env, const FormulaPtr& a,
                          const FormulaPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* ea = std::get_if<Equal>(&a->node)) {
    const auto& eb = std::get<Equal>(b->node);
    return alpha_term(env, ea->lhs, eb.lhs) && alpha_term(env, ea->rhs, eb.rhs);
  }
  if (const auto* fa = std::get_if<Forall>(&a->node)) {
    const auto& fb = std::get<Forall>(b->node);
    if (fa->binders.size() != fb.binders.size()) return false;
    for (size_t i = 0; i < fa->binders.size(); ++i)
      if (!alpha_type(env, fa->binders[i].type, fb.binders[i].type))
        return false;
    AlphaEnv inner = env;
    for (size_t i = 0; i < fa->binders.size(); ++i)
      inner.bind(fa->binders[i].var, fb.binders[i].var);
    return alpha_formula(inner, fa->body, fb.body);
  }
  if (const auto* na = std::get_if<Not>(&a->node))
    return alpha_formula(env, na->body, std::get<Not>(b->node).body);
  if (const auto* aa = std::get_if<And>(&a->node)) {
    const auto& ab = std::get<And>(b->node);
    return alpha_formula(env, aa->lhs, ab.lhs) &&
           alpha_formula(env, aa->rhs, ab.rhs);
  }
  if (const auto* oa = std::get_if<Or>(&a->node)) {
    const auto& ob = std::get<Or>(b->node);
    return alpha_formula(env, oa->lhs, ob.lhs) &&
           alpha_formula(env, oa->rhs, ob.rhs);
  }
  if (const auto* ia = std::get_if<Implies>(&a->node)) {
    const auto& ib = std::get<Implies>(b->node);
    return alpha_formula(env, ia->lhs, ib.lhs) &&
           alpha_formula(env, ia->rhs, ib.rhs);
  }
  if (const auto* da = std::get_if<DefinedIn>(&a->node)) {
    const auto& db = std::get<DefinedIn>(b->node);
    return alpha_term(env, da->term, db.term) &&
           alpha_type(env, da->type, db.type);
  }
  if (const auto* sa = std::get_if<Subtype>(&a->node)) {
    const auto& sb = std::get<Subtype>(b->node);
    return alpha_type(env, sa->sub, sb.sub) &&
           alpha_type(env, sa->super, sb.super);
  }
  if (const auto* ma = std::get_if<PropertyMacro>(&a->node)) {
    const auto& mb = std::get<PropertyMacro>(b->node);
    if (ma->name != mb.name || ma->args.size() != mb.args.size()) return false;
    for (size_t i = 0; i < ma->args.size(); ++i)
      if (!alpha_op(env, ma->args[i], mb.args[i])) return false;
    return true;
  }
  const auto& ta = std::get<Atom>(a->node);
  const auto& tb = std::get<Atom>(b->node);
  return alpha_term(env, ta.term, tb.term);
}

}  // namespace detail

inline bool alpha_equal(const TypePtr& a, const TypePtr& b) {
  return detail::alpha_type({}, a, b);
}
inline bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  return detail::alpha_term({}, a, b);
}
inline bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return detail::alpha_formula({}, a, b);
}

// Same kind, same name, bodies alpha-equal.
inline bool alpha_equal(const Declaration& a, const Declaration& b) {
  using detail::AlphaEnv;
  if (a.node.index() != b.node.index()) return false;
  if (decl_name(a) != decl_name(b)) return false;
  if (std::holds_alternative<TypeDecl>(a.node)) return true;
  if (const auto* oa = std::get_if<OpDecl>(&a.node))
    return alpha_equal(oa->type, std::get<OpDecl>(b.node).type);
  if (const auto* xa = std::get_if<AxiomDecl>(&a.node))
    return alpha_equal(xa->body, std::get<AxiomDecl>(b.node).body);
  if (const auto* ia = std::get_if<InductiveDecl>(&a.node)) {
    const auto& ib = std::get<InductiveDecl>(b.node);
    if (ia->ctors.size() != ib.ctors.size()) return false;
    for (size_t i = 0; i < ia->ctors.size(); ++i) {
      if (ia->ctors[i].name != ib.ctors[i].name) return false;
      if (!alpha_equal(ia->ctors[i].type, ib.ctors[i].type)) return false;
    }
    return true;
  }
  if (const auto* da = std::get_if<DefDecl>(&a.node)) {
    const auto& db = std::get<DefDecl>(b.node);
    if (!alpha_equal(da->type, db.type)) return false;
    if (da->clauses.size() != db.clauses.size()) return false;
    for (size_t i = 0; i < da->clauses.size(); ++i) {
      AlphaEnv env;
      if (!detail::alpha_pattern(env, da->clauses[i].lhs, db.clauses[i].lhs))
        return false;
      if (!detail::alpha_term(env, da->clauses[i].rhs, db.clauses[i].rhs))
        return false;
    }
    return true;
  }
  const auto& ta = std::get<TypeDefDecl>(a.node);
  const auto& tb = std::get<TypeDefDecl>(b.node);
  return alpha_equal(ta.def, tb.def);
}

namespace detail {

// Matches two definition-clause left-hand sides, binding pattern variables
// pairwise into env. Heads compare literally.
inline bool alpha_pattern(AlphaEnv& env, const TermPtr& a, const TermPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* va = std::get_if<Var>(&a->node)) {
    env.bind(va->name, std::get<Var>(b->node).name);
    return true;
  }
  if (const auto* pa = std::get_if<Apply>(&a->node)) {
    const auto& pb = std::get<Apply>(b->node);
    if (pa->op != pb.op) return false;
    if (pa->args.size() != pb.args.size()) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!alpha_pattern(env, pa->args[i], pb.args[i])) return false;
    return true;
  }
  return false;
}

}  // namespace detail

// Order-sensitive equality of two presentations' declaration lists.
inline bool alpha_equal_ordered(const TheoryPresentation& a,
                                const TheoryPresentation& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i)
    if (!alpha_equal(a.decls[i], b.decls[i])) return false;
  return true;
}

// Order-insensitive set equality of declarations (names are unique within a
// presentation, so matching by name suffices).
inline bool alpha_equal_as_set(const TheoryPresentation& a,
                               const TheoryPresentation& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (const auto& da : a.decls) {
    const Declaration* db = b.find(decl_name(da));
    if (!db || !alpha_equal(da, *db)) return false;
  }
  return true;
}

}  // namespace theoria
