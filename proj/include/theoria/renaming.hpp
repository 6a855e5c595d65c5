#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "theoria/ast.hpp"
#include "theoria/error.hpp"

// Renamings are simultaneous (parallel) substitutions of names for names,
// injective on their domain. Applying one to a presentation renames declared
// names and every free occurrence; binder-bound names (quantifier variables,
// case-branch binders, definition patterns, data binders) are left alone,
// alpha-renaming a binder only when its name would capture a renamed symbol.

namespace theoria {

class Renaming {
 public:
  Renaming() = default;

  explicit Renaming(std::map<Name, Name> pairs) : pairs_(std::move(pairs)) {
    check_injective(pairs_);
  }

  static Renaming of(std::initializer_list<std::pair<Name, Name>> ps) {
    std::map<Name, Name> m;
    for (auto& [k, v] : ps) {
      if (m.count(k))
        fail(ErrorKind::InvalidRenaming, "duplicate source '" + k.text + "'");
      m.emplace(k, v);
    }
    return Renaming(std::move(m));
  }

  const std::map<Name, Name>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

  Name apply(const Name& n) const {
    auto it = pairs_.find(n);
    return it == pairs_.end() ? n : it->second;
  }

  bool maps(const Name& n) const { return pairs_.count(n) > 0; }

  bool in_range(const Name& n) const {
    for (const auto& [k, v] : pairs_)
      if (v == n) return true;
    return false;
  }

  Renaming inverse() const {
    std::map<Name, Name> inv;
    for (const auto& [k, v] : pairs_) inv.emplace(v, k);
    return Renaming(std::move(inv));
  }

  // Restrict to the given symbols and drop identity pairs. Used to normalize
  // composite arrow renamings to the source theory's vocabulary.
  Renaming restricted_to(const std::set<Name>& symbols) const {
    std::map<Name, Name> m;
    for (const auto& [k, v] : pairs_)
      if (symbols.count(k) && k != v) m.emplace(k, v);
    return Renaming(std::move(m));
  }

  Renaming without_identities() const {
    std::map<Name, Name> m;
    for (const auto& [k, v] : pairs_)
      if (k != v) m.emplace(k, v);
    return Renaming(std::move(m));
  }

  auto operator<=>(const Renaming&) const = default;

 private:
  static void check_injective(const std::map<Name, Name>& m) {
    std::set<Name> seen;
    for (const auto& [k, v] : m)
      if (!seen.insert(v).second)
        fail(ErrorKind::InvalidRenaming,
             "not injective: two names map to '" + v.text + "'");
  }

  std::map<Name, Name> pairs_;
};

// Sequential composition: applying `first` then `second` equals applying the
// result. Pass-through pairs of `second` whose source is produced by `first`
// are consumed by the composition rather than kept.
inline Renaming compose_renamings(const Renaming& first,
                                  const Renaming& second) {
  std::map<Name, Name> m;
  for (const auto& [k, v] : first.pairs()) {
    Name target = second.apply(v);
    if (k != target) m.emplace(k, target);
  }
  for (const auto& [k, v] : second.pairs()) {
    if (first.maps(k) || first.in_range(k)) continue;
    if (k != v) m.emplace(k, v);
  }
  std::set<Name> seen;
  for (const auto& [k, v] : m)
    if (!seen.insert(v).second)
      fail(ErrorKind::InvalidRenaming,
           "composite not injective at '" + v.text + "'");
  return Renaming(std::move(m));
}

namespace detail {

// Every name occurring anywhere in a subtree; used to pick fresh binder
// names during capture avoidance.
struct NameCollector {
  std::set<Name> out;

  void term(const TermPtr& t) {
    if (!t) return;
    struct V {
      NameCollector& c;
      void operator()(const Var& v) { c.out.insert(v.name); }
      void operator()(const Apply& a) {
        if (a.op.qualifier) c.out.insert(*a.op.qualifier);
        c.out.insert(a.op.name);
        for (const auto& x : a.args) c.term(x);
      }
      void operator()(const Case& cs) {
        c.term(cs.scrutinee);
        for (const auto& b : cs.branches) {
          c.out.insert(b.ctor);
          for (const auto& n : b.binders) c.out.insert(n);
          c.term(b.body);
        }
      }
    };
    std::visit(V{*this}, t->node);
  }

  void type(const TypePtr& t) {
    if (!t) return;
    struct V {
      NameCollector& c;
      void operator()(const SortRef& s) { c.out.insert(s.name); }
      void operator()(const FieldTypeRef& f) {
        c.out.insert(f.record);
        c.out.insert(f.field);
      }
      void operator()(const FunctionType& f) {
        for (const auto& a : f.args) c.type(a);
        c.type(f.result);
      }
      void operator()(const PredicateType& p) {
        for (const auto& a : p.args) c.type(a);
      }
      void operator()(const TypeKind&) {}
      void operator()(const RecordType& r) {
        for (const auto& f : r.fields) {
          c.out.insert(f.name);
          c.type(f.type);
        }
      }
      void operator()(const DataType& d) {
        c.out.insert(d.binder);
        for (const auto& ct : d.ctors) {
          c.out.insert(ct.name);
          c.type(ct.type);
        }
      }
      void operator()(const ProofOf& p) { c.formula(p.body); }
      void operator()(const TypeApp& a) {
        c.out.insert(a.head);
        for (const auto& n : a.args) c.out.insert(n);
      }
    };
    std::visit(V{*this}, t->node);
  }

  void formula(const FormulaPtr& f) {
    if (!f) return;
    struct V {
      NameCollector& c;
      void operator()(const Equal& e) {
        c.term(e.lhs);
        c.term(e.rhs);
      }
      void operator()(const Forall& fa) {
        for (const auto& b : fa.binders) {
          c.out.insert(b.var);
          c.type(b.type);
        }
        c.formula(fa.body);
      }
      void operator()(const Not& n) { c.formula(n.body); }
      void operator()(const And& a) {
        c.formula(a.lhs);
        c.formula(a.rhs);
      }
      void operator()(const Or& o) {
        c.formula(o.lhs);
        c.formula(o.rhs);
      }
      void operator()(const Implies& i) {
        c.formula(i.lhs);
        c.formula(i.rhs);
      }
      void operator()(const DefinedIn& d) {
        c.term(d.term);
        c.type(d.type);
      }
      void operator()(const Subtype& s) {
        c.type(s.sub);
        c.type(s.super);
      }
      void operator()(const PropertyMacro& m) {
        c.out.insert(m.name);
        for (const auto& a : m.args) {
          if (a.qualifier) c.out.insert(*a.qualifier);
          c.out.insert(a.name);
        }
      }
      void operator()(const Atom& a) { c.term(a.term); }
    };
    std::visit(V{*this}, f->node);
  }
};

using NameMap = std::map<Name, Name>;

inline Name fresh_name(const Name& base, const std::set<Name>& avoid) {
  Name n = base;
  do {
    n.text += "'";
  } while (avoid.count(n));
  return n;
}

// Entering a scope that binds `bound`: shadowed map entries are dropped and
// binders whose names sit in the active range are alpha-renamed via a fresh
// entry in the returned map. `subtree_names` must cover every name occurring
// under the binder.
inline NameMap enter_scope(const NameMap& m, std::vector<Name>& bound,
                           const std::set<Name>& subtree_names) {
  NameMap scoped;
  std::set<Name> range;
  for (const auto& [k, v] : m) {
    bool shadowed = false;
    for (const auto& b : bound)
      if (k == b) shadowed = true;
    if (!shadowed) {
      scoped.emplace(k, v);
      range.insert(v);
    }
  }
  for (auto& b : bound) {
    if (!range.count(b)) continue;
    std::set<Name> avoid = subtree_names;
    for (const auto& [k, v] : scoped) {
      avoid.insert(k);
      avoid.insert(v);
    }
    Name fresh = fresh_name(b, avoid);
    scoped[b] = fresh;
    range.insert(fresh);
    b = fresh;
  }
  return scoped;
}

struct Renamer {
  Name ap(const NameMap& m, const Name& n) const {
    auto it = m.find(n);
    return it == m.end() ? n : it->second;
  }

  OpName ap_op(const NameMap& m, const OpName& op) const {
    OpName out = op;
    if (out.qualifier) out.qualifier = ap(m, *out.qualifier);
    out.name = ap(m, out.name);
    return out;
  }

  TermPtr term(const NameMap& m, const TermPtr& t) const {
    struct V {
      const Renamer& r;
      const NameMap& m;
      TermPtr operator()(const Var& v) { return mk::var(r.ap(m, v.name)); }
      TermPtr operator()(const Apply& a) {
        std::vector<TermPtr> args;
        for (const auto& x : a.args) args.push_back(r.term(m, x));
        return mk::apply(r.ap_op(m, a.op), std::move(args));
      }
      TermPtr operator()(const Case& cs) {
        std::vector<CaseBranch> branches;
        for (const auto& b : cs.branches) {
          NameCollector nc;
          nc.term(b.body);
          std::vector<Name> bound = b.binders;
          NameMap scoped = enter_scope(m, bound, nc.out);
          branches.push_back(
              {r.ap(m, b.ctor), bound, r.term(scoped, b.body)});
        }
        return mk::term({Case{r.term(m, cs.scrutinee), std::move(branches)}});
      }
    };
    return std::visit(V{*this, m}, t->node);
  }

  TypePtr type(const NameMap& m, const TypePtr& t) const {
    struct V {
      const Renamer& r;
      const NameMap& m;
      TypePtr operator()(const SortRef& s) { return mk::sort(r.ap(m, s.name)); }
      TypePtr operator()(const FieldTypeRef& f) {
        return mk::field_type(r.ap(m, f.record), r.ap(m, f.field));
      }
      TypePtr operator()(const FunctionType& f) {
        std::vector<TypePtr> args;
        for (const auto& a : f.args) args.push_back(r.type(m, a));
        return mk::fn(std::move(args), r.type(m, f.result));
      }
      TypePtr operator()(const PredicateType& p) {
        std::vector<TypePtr> args;
        for (const auto& a : p.args) args.push_back(r.type(m, a));
        return mk::pred(std::move(args));
      }
      TypePtr operator()(const TypeKind&) { return mk::kind(); }
      TypePtr operator()(const RecordType& rec) {
        std::vector<RecordField> fields;
        for (const auto& f : rec.fields)
          fields.push_back({r.ap(m, f.name), r.type(m, f.type)});
        return mk::type({RecordType{std::move(fields)}});
      }
      TypePtr operator()(const DataType& d) {
        NameCollector nc;
        for (const auto& c : d.ctors) nc.type(c.type);
        std::vector<Name> bound{d.binder};
        NameMap scoped = enter_scope(m, bound, nc.out);
        std::vector<DataCtor> ctors;
        for (const auto& c : d.ctors)
          ctors.push_back({r.ap(m, c.name), r.type(scoped, c.type)});
        return mk::type({DataType{bound[0], std::move(ctors)}});
      }
      TypePtr operator()(const ProofOf& p) {
        return mk::proof_of(r.formula(m, p.body));
      }
      TypePtr operator()(const TypeApp& a) {
        std::vector<Name> args;
        for (const auto& n : a.args) args.push_back(r.ap(m, n));
        return mk::type_app(r.ap(m, a.head), std::move(args));
      }
    };
    return std::visit(V{*this, m}, t->node);
  }

  FormulaPtr formula(const NameMap& m, const FormulaPtr& f) const {
    struct V {
      const Renamer& r;
      const NameMap& m;
      FormulaPtr operator()(const Equal& e) {
        return mk::equal(r.term(m, e.lhs), r.term(m, e.rhs));
      }
      FormulaPtr operator()(const Forall& fa) {
        NameCollector nc;
        nc.formula(fa.body);
        for (const auto& b : fa.binders) nc.type(b.type);
        std::vector<Name> bound;
        for (const auto& b : fa.binders) bound.push_back(b.var);
        NameMap scoped = enter_scope(m, bound, nc.out);
        std::vector<Binder> binders;
        for (size_t i = 0; i < fa.binders.size(); ++i)
          binders.push_back({bound[i], r.type(m, fa.binders[i].type)});
        return mk::forall(std::move(binders), r.formula(scoped, fa.body));
      }
      FormulaPtr operator()(const Not& n) {
        return mk::lnot(r.formula(m, n.body));
      }
      FormulaPtr operator()(const And& a) {
        return mk::land(r.formula(m, a.lhs), r.formula(m, a.rhs));
      }
      FormulaPtr operator()(const Or& o) {
        return mk::lor(r.formula(m, o.lhs), r.formula(m, o.rhs));
      }
      FormulaPtr operator()(const Implies& i) {
        return mk::implies(r.formula(m, i.lhs), r.formula(m, i.rhs));
      }
      FormulaPtr operator()(const DefinedIn& d) {
        return mk::defined_in(r.term(m, d.term), r.type(m, d.type));
      }
      FormulaPtr operator()(const Subtype& s) {
        return mk::subtype(r.type(m, s.sub), r.type(m, s.super));
      }
      FormulaPtr operator()(const PropertyMacro& pm) {
        std::vector<OpName> args;
        for (const auto& a : pm.args) args.push_back(r.ap_op(m, a));
        return mk::macro(pm.name, std::move(args));
      }
      FormulaPtr operator()(const Atom& a) {
        return mk::atom(r.term(m, a.term));
      }
    };
    return std::visit(V{*this, m}, f->node);
  }

  Declaration decl(const NameMap& m, const Declaration& d) const {
    struct V {
      const Renamer& r;
      const NameMap& m;
      SourcePos pos;
      Declaration operator()(const TypeDecl& t) {
        return mk::type_decl(r.ap(m, t.name), pos);
      }
      Declaration operator()(const OpDecl& o) {
        return mk::op_decl(r.ap(m, o.name), r.type(m, o.type), pos);
      }
      Declaration operator()(const AxiomDecl& a) {
        return mk::axiom_decl(r.ap(m, a.name), r.formula(m, a.body), pos);
      }
      Declaration operator()(const InductiveDecl& i) {
        std::vector<InductiveCtor> ctors;
        for (const auto& c : i.ctors)
          ctors.push_back({r.ap(m, c.name), r.type(m, c.type)});
        return mk::inductive_decl(r.ap(m, i.name), std::move(ctors), pos);
      }
      Declaration operator()(const DefDecl& dd) {
        std::vector<DefClause> clauses;
        for (const auto& cl : dd.clauses) {
          // Pattern variables on the left bind in both sides.
          std::vector<Name> bound = pattern_vars(cl.lhs);
          NameCollector nc;
          nc.term(cl.lhs);
          nc.term(cl.rhs);
          NameMap scoped = enter_scope(m, bound, nc.out);
          clauses.push_back({rename_pattern(r, m, scoped, cl.lhs),
                             r.term(scoped, cl.rhs)});
        }
        return mk::def_decl(r.ap(m, dd.name), r.type(m, dd.type),
                            std::move(clauses), pos);
      }
      Declaration operator()(const TypeDefDecl& td) {
        return mk::typedef_decl(r.ap(m, td.name), r.type(m, td.def), pos);
      }

      static std::vector<Name> pattern_vars(const TermPtr& lhs) {
        std::vector<Name> out;
        if (const auto* ap = std::get_if<Apply>(&lhs->node))
          for (const auto& arg : ap->args) collect_pattern_vars(arg, out);
        return out;
      }
      static void collect_pattern_vars(const TermPtr& t,
                                       std::vector<Name>& out) {
        if (const auto* v = std::get_if<Var>(&t->node)) {
          out.push_back(v->name);
        } else if (const auto* ap = std::get_if<Apply>(&t->node)) {
          for (const auto& arg : ap->args) collect_pattern_vars(arg, out);
        }
      }
      // Heads of pattern applications are constructor/operation references
      // (renamed by the outer map); variables use the scoped map.
      static TermPtr rename_pattern(const Renamer& r, const NameMap& outer,
                                    const NameMap& scoped, const TermPtr& t) {
        if (std::holds_alternative<Var>(t->node)) return r.term(scoped, t);
        if (const auto* ap = std::get_if<Apply>(&t->node)) {
          std::vector<TermPtr> args;
          for (const auto& a : ap->args)
            args.push_back(rename_pattern(r, outer, scoped, a));
          return mk::apply(r.ap_op(outer, ap->op), std::move(args));
        }
        return r.term(scoped, t);
      }
    };
    return std::visit(V{*this, m, d.pos}, d.node);
  }
};

}  // namespace detail

inline Declaration apply_renaming(const Declaration& d, const Renaming& r) {
  return detail::Renamer{}.decl(r.pairs(), d);
}

inline FormulaPtr apply_renaming(const FormulaPtr& f, const Renaming& r) {
  return detail::Renamer{}.formula(r.pairs(), f);
}

inline TypePtr apply_renaming(const TypePtr& t, const Renaming& r) {
  return detail::Renamer{}.type(r.pairs(), t);
}

// Renames every declared name and every free occurrence; declaration order
// is preserved. Raises CaptureError when a range name would collide with an
// unrenamed declared symbol.
inline TheoryPresentation apply_renaming(const TheoryPresentation& p,
                                         const Renaming& r) {
  std::set<Name> symbols = symbols_of(p);
  for (const auto& [from, to] : r.pairs()) {
    if (symbols.count(to) && !r.maps(to))
      fail(ErrorKind::Capture, "renaming target '" + to.text +
                                   "' collides with unrenamed symbol '" +
                                   to.text + "' in '" + p.name.text + "'");
  }
  TheoryPresentation out;
  out.name = p.name;
  detail::Renamer ren;
  for (const auto& d : p.decls) out.decls.push_back(ren.decl(r.pairs(), d));
  return out;
}

}  // namespace theoria
