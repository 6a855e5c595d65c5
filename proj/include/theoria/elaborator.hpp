#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "theoria/arrows.hpp"
#include "theoria/ast.hpp"
#include "theoria/generators.hpp"
#include "theoria/macros.hpp"
#include "theoria/parser.hpp"
#include "theoria/printer.hpp"
#include "theoria/renaming.hpp"

// Evaluates theory-expression definitions in order: flattens extensions,
// applies renamings, computes pushouts for `combine ... over ...`, records
// the arrow graph, and expands property macros into stored presentations.

namespace theoria {

enum class TheoryOrigin { Literal, Extension, Rename, Combine, Instance, Generated };

inline const char* origin_name(TheoryOrigin o) {
  switch (o) {
    case TheoryOrigin::Literal: return "literal";
    case TheoryOrigin::Extension: return "extension";
    case TheoryOrigin::Rename: return "rename";
    case TheoryOrigin::Combine: return "combine";
    case TheoryOrigin::Instance: return "instance";
    case TheoryOrigin::Generated: return "generated";
  }
  return "?";
}

struct LibraryEnv {
  std::map<Name, TheoryPresentation> theories;
  std::vector<Name> order;  // elaboration order
  std::vector<Arrow> arrows;
  std::vector<ProofObligation> obligations;
  std::map<Name, TheoryOrigin> origins;
  std::map<Name, GeneratedArtifact> artifacts;
  std::map<Name, long> macro_uses;

  bool has(const Name& n) const { return theories.count(n) > 0; }

  const TheoryPresentation& theory(const Name& n) const {
    auto it = theories.find(n);
    if (it == theories.end())
      fail(ErrorKind::UnknownTheory, "no theory named '" + n.text + "'");
    return it->second;
  }

  void add_theory(TheoryPresentation p, TheoryOrigin origin) {
    order.push_back(p.name);
    origins.emplace(p.name, origin);
    theories.emplace(p.name, std::move(p));
  }

  void record_arrow(Arrow a) {
    for (const auto& existing : arrows)
      if (existing == a) return;
    arrows.push_back(std::move(a));
  }
};

inline std::vector<ProofObligation> validate_arrow(const Arrow& a,
                                                   const LibraryEnv& env) {
  return validate_arrow(a, env.theory(a.source), env.theory(a.target));
}

namespace detail {

// Free (referenced) names of a declaration: everything reachable minus
// binder-bound names, the declaration's own name, and uninterpreted
// type-application heads.
struct FreeNames {
  std::set<Name> out;
  std::set<Name> bound;

  void add(const Name& n) {
    if (!bound.count(n)) out.insert(n);
  }

  void term(const TermPtr& t) {
    if (const auto* v = std::get_if<Var>(&t->node)) {
      add(v->name);
      return;
    }
    if (const auto* a = std::get_if<Apply>(&t->node)) {
      if (a->op.qualifier)
        add(*a->op.qualifier);
      else
        add(a->op.name);
      for (const auto& x : a->args) term(x);
      return;
    }
    const auto& c = std::get<Case>(t->node);
    term(c.scrutinee);
    for (const auto& b : c.branches) {
      add(b.ctor);
      std::set<Name> saved = bound;
      for (const auto& n : b.binders) bound.insert(n);
      term(b.body);
      bound = std::move(saved);
    }
  }

  void type(const TypePtr& t) {
    if (const auto* s = std::get_if<SortRef>(&t->node)) {
      add(s->name);
      return;
    }
    if (const auto* f = std::get_if<FieldTypeRef>(&t->node)) {
      add(f->record);
      return;
    }
    if (const auto* f = std::get_if<FunctionType>(&t->node)) {
      for (const auto& a : f->args) type(a);
      type(f->result);
      return;
    }
    if (const auto* p = std::get_if<PredicateType>(&t->node)) {
      for (const auto& a : p->args) type(a);
      return;
    }
    if (const auto* r = std::get_if<RecordType>(&t->node)) {
      std::set<Name> saved = bound;
      for (const auto& f : r->fields) {
        type(f.type);
        bound.insert(f.name);  // later fields may reference earlier ones
      }
      bound = std::move(saved);
      return;
    }
    if (const auto* d = std::get_if<DataType>(&t->node)) {
      std::set<Name> saved = bound;
      bound.insert(d->binder);
      for (const auto& c : d->ctors) type(c.type);
      bound = std::move(saved);
      return;
    }
    if (const auto* pf = std::get_if<ProofOf>(&t->node)) {
      formula(pf->body);
      return;
    }
    if (const auto* ap = std::get_if<TypeApp>(&t->node)) {
      for (const auto& n : ap->args) add(n);  // head left uninterpreted
      return;
    }
  }

  void formula(const FormulaPtr& f) {
    if (const auto* e = std::get_if<Equal>(&f->node)) {
      term(e->lhs);
      term(e->rhs);
      return;
    }
    if (const auto* fa = std::get_if<Forall>(&f->node)) {
      for (const auto& b : fa->binders) type(b.type);
      std::set<Name> saved = bound;
      for (const auto& b : fa->binders) bound.insert(b.var);
      formula(fa->body);
      bound = std::move(saved);
      return;
    }
    if (const auto* n = std::get_if<Not>(&f->node)) return formula(n->body);
    if (const auto* a = std::get_if<And>(&f->node)) {
      formula(a->lhs);
      formula(a->rhs);
      return;
    }
    if (const auto* o = std::get_if<Or>(&f->node)) {
      formula(o->lhs);
      formula(o->rhs);
      return;
    }
    if (const auto* i = std::get_if<Implies>(&f->node)) {
      formula(i->lhs);
      formula(i->rhs);
      return;
    }
    if (const auto* d = std::get_if<DefinedIn>(&f->node)) {
      term(d->term);
      type(d->type);
      return;
    }
    if (const auto* s = std::get_if<Subtype>(&f->node)) {
      type(s->sub);
      type(s->super);
      return;
    }
    if (const auto* m = std::get_if<PropertyMacro>(&f->node)) {
      for (const auto& a : m->args) {
        if (a.qualifier)
          add(*a.qualifier);
        else
          add(a.name);
      }
      return;
    }
    const auto& at = std::get<Atom>(f->node);
    term(at.term);
  }

  void decl(const Declaration& d) {
    bound.insert(decl_name(d));
    if (const auto* o = std::get_if<OpDecl>(&d.node)) {
      type(o->type);
    } else if (const auto* a = std::get_if<AxiomDecl>(&d.node)) {
      formula(a->body);
    } else if (const auto* i = std::get_if<InductiveDecl>(&d.node)) {
      std::set<Name> saved = bound;
      for (const auto& c : i->ctors) bound.insert(c.name);
      for (const auto& c : i->ctors) type(c.type);
      bound = std::move(saved);
    } else if (const auto* df = std::get_if<DefDecl>(&d.node)) {
      type(df->type);
      for (const auto& cl : df->clauses) {
        std::set<Name> saved = bound;
        std::vector<Name> vars;
        collect_pattern_vars(cl.lhs, vars);
        for (const auto& v : vars) bound.insert(v);
        pattern_refs(cl.lhs);
        term(cl.rhs);
        bound = std::move(saved);
      }
    } else if (const auto* td = std::get_if<TypeDefDecl>(&d.node)) {
      type(td->def);
    }
  }

  static void collect_pattern_vars(const TermPtr& t, std::vector<Name>& out) {
    if (const auto* v = std::get_if<Var>(&t->node)) {
      out.push_back(v->name);
    } else if (const auto* a = std::get_if<Apply>(&t->node)) {
      for (const auto& arg : a->args) collect_pattern_vars(arg, out);
    }
  }

  void pattern_refs(const TermPtr& t) {
    if (const auto* a = std::get_if<Apply>(&t->node)) {
      for (const auto& arg : a->args)
        if (const auto* inner = std::get_if<Apply>(&arg->node)) {
          add(inner->op.name);
          pattern_refs(arg);
        }
    }
  }
};

inline std::set<Name> free_names(const Declaration& d) {
  FreeNames fn;
  fn.decl(d);
  return fn.out;
}

// Expands property macros (explicit PropertyMacro nodes and atom calls whose
// head is a table entry) everywhere in a formula.
inline FormulaPtr expand_macros(const FormulaPtr& f,
                                const PropertyMacroTable& table,
                                const SignatureLookup& sig,
                                const std::set<Name>& avoid,
                                std::map<Name, long>* uses) {
  auto rec = [&](const FormulaPtr& g) {
    return expand_macros(g, table, sig, avoid, uses);
  };
  if (const auto* m = std::get_if<PropertyMacro>(&f->node)) {
    if (uses) ++(*uses)[m->name];
    return table.expand(*m, sig, avoid);
  }
  if (const auto* at = std::get_if<Atom>(&f->node)) {
    if (const auto* ap = std::get_if<Apply>(&at->term->node);
        ap && !ap->op.qualifier && table.contains(ap->op.name)) {
      PropertyMacro m{ap->op.name, {}};
      for (const auto& arg : ap->args) {
        if (const auto* v = std::get_if<Var>(&arg->node))
          m.args.push_back(OpName{v->name});
        else if (const auto* q = std::get_if<Apply>(&arg->node);
                 q && q->args.empty() && q->op.qualifier)
          m.args.push_back(q->op);
        else
          fail(ErrorKind::NonOperationArgument,
               "macro '" + ap->op.name.text +
                   "': arguments must name operations");
      }
      if (uses) ++(*uses)[m.name];
      return table.expand(m, sig, avoid);
    }
    return f;
  }
  if (const auto* fa = std::get_if<Forall>(&f->node))
    return mk::forall(fa->binders, rec(fa->body));
  if (const auto* n = std::get_if<Not>(&f->node)) return mk::lnot(rec(n->body));
  if (const auto* a = std::get_if<And>(&f->node))
    return mk::land(rec(a->lhs), rec(a->rhs));
  if (const auto* o = std::get_if<Or>(&f->node))
    return mk::lor(rec(o->lhs), rec(o->rhs));
  if (const auto* i = std::get_if<Implies>(&f->node))
    return mk::implies(rec(i->lhs), rec(i->rhs));
  return f;
}

}  // namespace detail

// --- extension ----------------------------------------------------------

// Appends new declarations to a copy of the base, expanding macro axioms
// against the accumulated context; the arrow is the identity inclusion.
inline std::pair<TheoryPresentation, Arrow> eval_extend(
    const TheoryPresentation& base, const std::vector<Declaration>& new_decls,
    const Name& result_name,
    const PropertyMacroTable& table = PropertyMacroTable::builtins(),
    std::map<Name, long>* macro_uses = nullptr) {
  TheoryPresentation result;
  result.name = result_name;
  result.decls = base.decls;
  std::set<Name> known = symbols_of(base);

  for (const auto& d : new_decls) {
    const Name& n = decl_name(d);
    if (known.count(n))
      fail(ErrorKind::DuplicateName, "'" + n.text + "' is already declared in '" +
                                         base.name.text + "'");
    Declaration expanded = d;
    if (const auto* ax = std::get_if<AxiomDecl>(&d.node)) {
      SignatureLookup sig = signature_lookup_for(result);
      expanded = mk::axiom_decl(
          ax->name,
          detail::expand_macros(ax->body, table, sig, known, macro_uses),
          d.pos);
    }
    for (const auto& ref : detail::free_names(expanded))
      if (!known.count(ref))
        fail(ErrorKind::UnresolvedSymbol,
             "'" + ref.text + "' referenced by '" + n.text +
                 "' is not declared",
             d.pos);
    result.decls.push_back(expanded);
    known.insert(n);
    if (const auto* ind = std::get_if<InductiveDecl>(&d.node))
      for (const auto& c : ind->ctors) known.insert(c.name);
  }

  Arrow arrow{base.name, result_name, Renaming{}, Provenance::Extension};
  return {std::move(result), std::move(arrow)};
}

// --- arrow inference -------------------------------------------------------

namespace detail {

// Pointwise composite of a reached renaming with one more arrow, kept
// normalized to the source theory's symbols. Throws InvalidRenaming when a
// path genuinely merges two source symbols; callers treat that as a dead
// path.
inline Renaming step_renaming(const Renaming& r, const Renaming& arrow,
                              const std::set<Name>& from_symbols) {
  std::map<Name, Name> m;
  for (const auto& s : from_symbols) {
    Name t = arrow.apply(r.apply(s));
    if (t != s) m.emplace(s, t);
  }
  return Renaming(std::move(m));
}

}  // namespace detail

// Searches the recorded arrow graph, composing renamings along paths; paths
// composing to identical renamings merge silently and distinct composites
// are ambiguous. Falls back to checking the identity inclusion directly.
// Saturation over distinct composites per node keeps the diamond-rich graph
// tractable where path enumeration would not be.
inline Arrow infer_arrow(const Name& from, const Name& to,
                         const LibraryEnv& env) {
  const TheoryPresentation& src = env.theory(from);
  const TheoryPresentation& tgt = env.theory(to);
  if (from == to) return Arrow{from, to, Renaming{}, Provenance::Composite};

  std::set<Name> from_symbols = symbols_of(src);
  std::map<Name, std::vector<Renaming>> reached;
  reached[from].push_back(Renaming{});
  std::vector<std::pair<Name, Renaming>> work{{from, Renaming{}}};
  while (!work.empty()) {
    auto [node, r] = work.back();
    work.pop_back();
    for (const auto& a : env.arrows) {
      if (a.source != node) continue;
      Renaming next;
      try {
        next = detail::step_renaming(r, a.renaming, from_symbols);
      } catch (const Error&) {
        continue;
      }
      std::vector<Renaming>& seen = reached[a.target];
      bool known = false;
      for (const auto& existing : seen)
        if (existing == next) known = true;
      if (known) continue;
      seen.push_back(next);
      work.emplace_back(a.target, next);
    }
  }

  auto it = reached.find(to);
  if (it != reached.end()) {
    const std::vector<Renaming>& found = it->second;
    if (found.size() > 1)
      fail(ErrorKind::AmbiguousMorphism,
           "two paths from '" + from.text + "' to '" + to.text +
               "' compose to different renamings: " + pretty_print(found[0]) +
               " vs " + pretty_print(found[1]));
    return Arrow{from, to, found[0], Provenance::Composite};
  }

  Arrow identity{from, to, Renaming{}, Provenance::Composite};
  try {
    validate_arrow(identity, src, tgt);
    return identity;
  } catch (const Error&) {
    fail(ErrorKind::NoMorphism,
         "cannot infer a morphism from '" + from.text + "' to '" + to.text +
             "'");
  }
}

// --- pushout ----------------------------------------------------------------

namespace detail {

// Merge one carried declaration into the accumulating pushout result. An
// inductive type realizes an abstract type of the same name (and a defined
// operation realizes its signature); those pairs merge to the concrete side.
inline void merge_decl(std::vector<Declaration>& decls, const Declaration& d,
                       const Name& part, const Name& into) {
  for (auto& existing : decls) {
    if (decl_name(existing) != decl_name(d)) continue;
    if (alpha_equal(existing, d)) return;  // shared part, identified once
    const Name& n = decl_name(d);
    bool d_ind = std::holds_alternative<InductiveDecl>(d.node);
    bool e_ind = std::holds_alternative<InductiveDecl>(existing.node);
    if (std::holds_alternative<TypeDecl>(existing.node) && d_ind) {
      existing = d;  // concrete realization refines the abstract sort
      return;
    }
    if (e_ind && std::holds_alternative<TypeDecl>(d.node)) return;
    if (const auto* eop = std::get_if<OpDecl>(&existing.node)) {
      if (const auto* dd = std::get_if<DefDecl>(&d.node);
          dd && alpha_equal(eop->type, dd->type)) {
        existing = d;
        return;
      }
    }
    if (const auto* ed = std::get_if<DefDecl>(&existing.node)) {
      if (const auto* dop = std::get_if<OpDecl>(&d.node);
          dop && alpha_equal(ed->type, dop->type))
        return;
    }
    fail(ErrorKind::NameClash,
         "combine: '" + n.text + "' from '" + part.text +
             "' clashes with an unequal declaration of the same name in '" +
             into.text + "'; rename one side first, e.g. " + part.text +
             " [" + n.text + " |-> " + n.text + "2]");
  }
  decls.push_back(d);
}

}  // namespace detail

// n-ary pushout as left-associated binary pushouts. The result starts from
// the first part's declarations; each later part is carried over with its
// image of the shared base identified with the first part's image.
inline std::pair<TheoryPresentation, std::vector<Arrow>> eval_combine(
    const std::vector<Name>& parts, const Name& over, const LibraryEnv& env,
    const Name& result_name) {
  if (parts.size() < 2)
    fail(ErrorKind::Parse, "combine needs at least two parts");
  const TheoryPresentation& base = env.theory(over);
  std::set<Name> base_symbols = symbols_of(base);

  std::vector<Renaming> into_part;  // over -> part_i
  for (const auto& part : parts) {
    try {
      into_part.push_back(infer_arrow(over, part, env).renaming);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoMorphism)
        fail(ErrorKind::NoMorphism,
             "combine over '" + over.text + "': " + std::string(e.what()));
      throw;
    }
  }

  TheoryPresentation result;
  result.name = result_name;
  result.decls = env.theory(parts[0]).decls;

  std::vector<Renaming> legs(parts.size());
  for (size_t i = 1; i < parts.size(); ++i) {
    const TheoryPresentation& part = env.theory(parts[i]);
    std::map<Name, Name> sigma_pairs;
    for (const auto& s : base_symbols) {
      Name in_part = into_part[i].apply(s);
      Name in_result = into_part[0].apply(s);
      if (in_part != in_result) sigma_pairs.emplace(in_part, in_result);
    }
    Renaming sigma(std::move(sigma_pairs));
    TheoryPresentation carried;
    try {
      carried = apply_renaming(part, sigma);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Capture)
        fail(ErrorKind::NameClash,
             "combine: identifying the shared base of '" + parts[i].text +
                 "' collides with its other symbols; rename the part first (" +
                 std::string(e.what()) + ")");
      throw;
    }
    for (const auto& d : carried.decls)
      detail::merge_decl(result.decls, d, parts[i], result_name);
    legs[i] = sigma.restricted_to(symbols_of(part));
  }

  std::vector<Arrow> arrows;
  for (size_t i = 0; i < parts.size(); ++i)
    arrows.push_back(
        Arrow{parts[i], result_name, legs[i], Provenance::CombineLeg});
  return {std::move(result), std::move(arrows)};
}

// --- instance -------------------------------------------------------------

// Renames a concrete theory into the base's vocabulary and asserts the
// non-inferable arrow base -> result. Signature inclusion is checked; the
// base's axioms become proof obligations.
inline std::tuple<TheoryPresentation, Arrow, std::vector<ProofObligation>>
eval_instance(const TheoryPresentation& source, const TheoryPresentation& base,
              const Renaming& via, const Name& result_name) {
  std::set<Name> source_symbols = symbols_of(source);
  std::set<Name> base_symbols = symbols_of(base);
  for (const auto& [from, to] : via.pairs()) {
    if (!source_symbols.count(from))
      fail(ErrorKind::InvalidRenaming,
           "instance: '" + from.text + "' is not declared in '" +
               source.name.text + "'");
    if (!base_symbols.count(to))
      fail(ErrorKind::InvalidRenaming,
           "instance: '" + to.text + "' is not declared in '" +
               base.name.text + "'");
  }
  TheoryPresentation result = apply_renaming(source, via);
  result.name = result_name;
  Arrow arrow{base.name, result_name, Renaming{}, Provenance::Instance};
  std::vector<ProofObligation> obligations =
      validate_arrow(arrow, base, result);
  return {std::move(result), std::move(arrow), std::move(obligations)};
}

// --- library elaboration -----------------------------------------------------

inline void elaborate_into(LibraryEnv& env, const SourceFile& src,
                           const PropertyMacroTable& table) {
  for (const auto& def : src.definitions) {
    try {
      if (env.has(def.name))
        fail(ErrorKind::DuplicateName,
             "theory '" + def.name.text + "' already defined");
      struct V {
        LibraryEnv& env;
        const Definition& def;
        const PropertyMacroTable& table;

        void operator()(const TheoryExpr::Literal& lit) {
          TheoryPresentation empty{def.name, {}};
          auto [pres, arrow] = eval_extend(empty, lit.decls, def.name, table,
                                           &env.macro_uses);
          env.add_theory(std::move(pres), TheoryOrigin::Literal);
        }
        void operator()(const TheoryExpr::ExtendedBy& ext) {
          auto [pres, arrow] = eval_extend(env.theory(ext.base), ext.decls,
                                           def.name, table, &env.macro_uses);
          env.add_theory(std::move(pres), TheoryOrigin::Extension);
          env.record_arrow(std::move(arrow));
        }
        void operator()(const TheoryExpr::RenameOf& ren) {
          TheoryPresentation pres =
              apply_renaming(env.theory(ren.base), ren.renaming);
          pres.name = def.name;
          env.add_theory(std::move(pres), TheoryOrigin::Rename);
          env.record_arrow(Arrow{ren.base, def.name,
                                 ren.renaming.without_identities(),
                                 Provenance::Rename});
        }
        void operator()(const TheoryExpr::CombineOver& comb) {
          auto [pres, arrows] =
              eval_combine(comb.parts, comb.over, env, def.name);
          env.add_theory(std::move(pres), TheoryOrigin::Combine);
          for (auto& a : arrows) env.record_arrow(std::move(a));
        }
        void operator()(const TheoryExpr::InstanceOf& inst) {
          auto [pres, arrow, obligations] =
              eval_instance(env.theory(inst.source), env.theory(inst.base),
                            inst.via, def.name);
          env.add_theory(std::move(pres), TheoryOrigin::Instance);
          env.record_arrow(std::move(arrow));
          for (auto& o : obligations) env.obligations.push_back(std::move(o));
        }
        void operator()(const TheoryExpr::GeneratorCall& gen) {
          const TheoryPresentation& origin = env.theory(gen.arg);
          switch (gen.kind) {
            case GenKind::TypeFrom: {
              TypePtr t = gen_record_type(origin);
              env.artifacts.emplace(
                  def.name, GeneratedArtifact{ArtifactKind::ModelRecord,
                                              gen.arg, t, std::nullopt});
              TheoryPresentation pres{def.name,
                                      {mk::typedef_decl(def.name, t)}};
              env.add_theory(std::move(pres), TheoryOrigin::Generated);
              break;
            }
            case GenKind::TermAlgebra: {
              TypePtr t = gen_term_algebra(origin);
              env.artifacts.emplace(
                  def.name, GeneratedArtifact{ArtifactKind::TermAlgebra,
                                              gen.arg, t, std::nullopt});
              TheoryPresentation pres{def.name,
                                      {mk::typedef_decl(def.name, t)}};
              env.add_theory(std::move(pres), TheoryOrigin::Generated);
              break;
            }
            case GenKind::Homomorphism: {
              TheoryPresentation pres = gen_homomorphism(origin);
              pres.name = def.name;
              env.artifacts.emplace(
                  def.name, GeneratedArtifact{ArtifactKind::HomTheory, gen.arg,
                                              nullptr, pres});
              env.add_theory(std::move(pres), TheoryOrigin::Generated);
              break;
            }
            case GenKind::Substructure: {
              TheoryPresentation pres = gen_substructure(origin);
              pres.name = def.name;
              env.artifacts.emplace(
                  def.name, GeneratedArtifact{ArtifactKind::SubTheory, gen.arg,
                                              nullptr, pres});
              env.add_theory(std::move(pres), TheoryOrigin::Generated);
              break;
            }
          }
        }
      };
      std::visit(V{env, def, table}, def.expr.node);
    } catch (const Error& e) {
      if (std::string(e.what()).rfind("in definition", 0) == 0) throw;
      fail(e.kind(),
           "in definition '" + def.name.text + "': " + std::string(e.what()),
           e.pos().known() ? e.pos() : def.pos);
    }
  }
}

inline LibraryEnv elaborate_library(
    const SourceFile& src,
    const PropertyMacroTable& table = PropertyMacroTable::builtins()) {
  LibraryEnv env;
  elaborate_into(env, src, table);
  return env;
}

}  // namespace theoria
