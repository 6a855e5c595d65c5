#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "theoria/alpha.hpp"
#include "theoria/ast.hpp"
#include "theoria/error.hpp"
#include "theoria/printer.hpp"

// Well-formedness checking of elaborated presentations: symbol resolution,
// nominal sort checking of terms and formulas, inductive-type and
// pattern-match validation. Diagnostics are data, not exceptions.

namespace theoria {

enum class Severity { Error, Warning, Note };

inline const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "?";
}

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  Name theory;
  Name decl;
  SourcePos pos;
};

inline std::string render(const Diagnostic& d, const std::string& file) {
  std::string out = file + ":" + std::to_string(d.pos.line) + ":" +
                    std::to_string(d.pos.col) + ": " +
                    severity_name(d.severity) + ": " + d.message;
  if (!d.theory.empty()) out += " [" + d.theory.text;
  if (!d.decl.empty()) out += "." + d.decl.text;
  if (!d.theory.empty()) out += "]";
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

// Name-resolution context: declared symbols of the presentation (those
// preceding the declaration under scrutiny) plus a stack of bound variables.
// Lookup resolves bound names before declared names.
class SortContext {
 public:
  void declare_sort(const Name& n) { sorts_.insert(n); }
  void declare_op(const Name& n, TypePtr t) { ops_[n] = std::move(t); }
  void declare_inductive(const InductiveDecl& ind) {
    sorts_.insert(ind.name);
    inductives_[ind.name] = ind;
    for (const auto& c : ind.ctors) ops_[c.name] = c.type;
  }
  void declare_typedef(const Name& n, TypePtr def) {
    sorts_.insert(n);
    typedefs_[n] = std::move(def);
  }
  void add_subtype_fact(const TypePtr& sub, const TypePtr& super) {
    subtype_facts_.emplace_back(sub, super);
  }

  bool is_sort(const Name& n) const { return sorts_.count(n) > 0; }
  bool is_declared(const Name& n) const {
    return sorts_.count(n) || ops_.count(n);
  }

  std::optional<TypePtr> op_type(const Name& n) const {
    auto it = ops_.find(n);
    if (it == ops_.end()) return std::nullopt;
    return it->second;
  }

  const InductiveDecl* inductive(const Name& sort) const {
    auto it = inductives_.find(sort);
    return it == inductives_.end() ? nullptr : &it->second;
  }

  std::optional<TypePtr> typedef_body(const Name& n) const {
    auto it = typedefs_.find(n);
    if (it == typedefs_.end()) return std::nullopt;
    return it->second;
  }

  void push_bound(const Name& n, TypePtr t) { bound_.emplace_back(n, t); }
  void pop_bound(size_t count) {
    bound_.resize(bound_.size() - count);
  }
  size_t bound_depth() const { return bound_.size(); }

  std::optional<TypePtr> bound_type(const Name& n) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == n) return it->second;
    return std::nullopt;
  }

  // The record type behind a value, through one typedef if needed.
  const RecordType* record_of(const Name& value) const {
    auto t = op_type(value);
    if (!t) return nullptr;
    TypePtr ty = *t;
    if (const auto* sr = std::get_if<SortRef>(&ty->node)) {
      auto td = typedef_body(sr->name);
      if (!td) return nullptr;
      ty = *td;
    }
    return std::get_if<RecordType>(&ty->node);
  }

  // Field type of `value.field`, with references to sibling fields
  // re-qualified to the same record value.
  std::optional<TypePtr> field_type(const Name& value,
                                    const Name& field) const {
    const RecordType* rec = record_of(value);
    if (!rec) return std::nullopt;
    std::set<Name> field_names;
    for (const auto& f : rec->fields) field_names.insert(f.name);
    for (const auto& f : rec->fields) {
      if (f.name != field) continue;
      auto requalify = [&](const TypePtr& t, auto&& self) -> TypePtr {
        if (const auto* sr = std::get_if<SortRef>(&t->node)) {
          if (field_names.count(sr->name))
            return mk::field_type(value, sr->name);
          return t;
        }
        if (const auto* fn = std::get_if<FunctionType>(&t->node)) {
          std::vector<TypePtr> args;
          for (const auto& a : fn->args) args.push_back(self(a, self));
          return mk::fn(std::move(args), self(fn->result, self));
        }
        if (const auto* pr = std::get_if<PredicateType>(&t->node)) {
          std::vector<TypePtr> args;
          for (const auto& a : pr->args) args.push_back(self(a, self));
          return mk::pred(std::move(args));
        }
        return t;
      };
      return requalify(f.type, requalify);
    }
    return std::nullopt;
  }

  // Accepts `found` where `expected` is wanted: nominal equality or one
  // recorded subtype step.
  bool sort_matches(const TypePtr& expected, const TypePtr& found) const {
    if (alpha_equal(expected, found)) return true;
    for (const auto& [sub, super] : subtype_facts_)
      if (alpha_equal(found, sub) && alpha_equal(expected, super)) return true;
    return false;
  }

 private:
  std::set<Name> sorts_;
  std::map<Name, TypePtr> ops_;
  std::map<Name, InductiveDecl> inductives_;
  std::map<Name, TypePtr> typedefs_;
  std::vector<std::pair<Name, TypePtr>> bound_;
  std::vector<std::pair<TypePtr, TypePtr>> subtype_facts_;
};

namespace detail {

inline bool contains_type_app(const TypePtr& t);
inline bool contains_type_app(const FormulaPtr& f);
inline bool contains_type_app(const TermPtr& t) {
  if (const auto* a = std::get_if<Apply>(&t->node)) {
    for (const auto& x : a->args)
      if (contains_type_app(x)) return true;
    return false;
  }
  if (const auto* c = std::get_if<Case>(&t->node)) {
    if (contains_type_app(c->scrutinee)) return true;
    for (const auto& b : c->branches)
      if (contains_type_app(b.body)) return true;
  }
  return false;
}

inline bool contains_type_app(const TypePtr& t) {
  if (std::holds_alternative<TypeApp>(t->node)) return true;
  if (const auto* f = std::get_if<FunctionType>(&t->node)) {
    for (const auto& a : f->args)
      if (contains_type_app(a)) return true;
    return contains_type_app(f->result);
  }
  if (const auto* p = std::get_if<PredicateType>(&t->node)) {
    for (const auto& a : p->args)
      if (contains_type_app(a)) return true;
    return false;
  }
  if (const auto* r = std::get_if<RecordType>(&t->node)) {
    for (const auto& f : r->fields)
      if (contains_type_app(f.type)) return true;
    return false;
  }
  if (const auto* d = std::get_if<DataType>(&t->node)) {
    for (const auto& c : d->ctors)
      if (contains_type_app(c.type)) return true;
    return false;
  }
  if (const auto* p = std::get_if<ProofOf>(&t->node))
    return contains_type_app(p->body);
  return false;
}

inline bool contains_type_app(const FormulaPtr& f) {
  if (const auto* e = std::get_if<Equal>(&f->node))
    return contains_type_app(e->lhs) || contains_type_app(e->rhs);
  if (const auto* fa = std::get_if<Forall>(&f->node)) {
    for (const auto& b : fa->binders)
      if (contains_type_app(b.type)) return true;
    return contains_type_app(fa->body);
  }
  if (const auto* n = std::get_if<Not>(&f->node))
    return contains_type_app(n->body);
  if (const auto* a = std::get_if<And>(&f->node))
    return contains_type_app(a->lhs) || contains_type_app(a->rhs);
  if (const auto* o = std::get_if<Or>(&f->node))
    return contains_type_app(o->lhs) || contains_type_app(o->rhs);
  if (const auto* i = std::get_if<Implies>(&f->node))
    return contains_type_app(i->lhs) || contains_type_app(i->rhs);
  if (const auto* d = std::get_if<DefinedIn>(&f->node))
    return contains_type_app(d->term) || contains_type_app(d->type);
  if (const auto* s = std::get_if<Subtype>(&f->node))
    return contains_type_app(s->sub) || contains_type_app(s->super);
  if (const auto* at = std::get_if<Atom>(&f->node))
    return contains_type_app(at->term);
  return false;
}

// Flattens a possibly curried constructor/operation type into argument
// sorts plus a result.
inline std::pair<std::vector<TypePtr>, TypePtr> flatten_signature(
    const TypePtr& t) {
  std::vector<TypePtr> args;
  TypePtr cur = t;
  while (const auto* fn = std::get_if<FunctionType>(&cur->node)) {
    for (const auto& a : fn->args) args.push_back(a);
    cur = fn->result;
  }
  return {std::move(args), cur};
}

}  // namespace detail

// Infers the unique sort of a term. Application checks arity and argument
// sorts against the operation's signature; equality of sorts is nominal.
inline TypePtr infer_term_sort(const TermPtr& t, const SortContext& ctx) {
  if (const auto* v = std::get_if<Var>(&t->node)) {
    if (auto b = ctx.bound_type(v->name)) return *b;
    if (auto d = ctx.op_type(v->name)) return *d;
    fail(ErrorKind::UnknownName, "unknown name '" + v->name.text + "'");
  }
  if (const auto* a = std::get_if<Apply>(&t->node)) {
    TypePtr op_type;
    if (a->op.qualifier) {
      auto ft = ctx.field_type(*a->op.qualifier, a->op.name);
      if (!ft)
        fail(ErrorKind::UnknownName,
             "unknown field '" + to_string(a->op) + "'");
      op_type = *ft;
    } else {
      if (ctx.bound_type(a->op.name))
        fail(ErrorKind::SortMismatch,
             "bound variable '" + a->op.name.text + "' cannot be applied");
      auto d = ctx.op_type(a->op.name);
      if (!d)
        fail(ErrorKind::UnknownName, "unknown operation '" + a->op.name.text + "'");
      op_type = *d;
    }
    if (std::holds_alternative<PredicateType>(op_type->node))
      fail(ErrorKind::SortMismatch,
           "predicate '" + to_string(a->op) + "' used as a term");
    if (a->args.empty()) return op_type;  // constant or bare reference
    auto [params, result] = detail::flatten_signature(op_type);
    if (params.empty())
      fail(ErrorKind::SortMismatch,
           "'" + to_string(a->op) + "' is not applicable");
    if (params.size() != a->args.size())
      fail(ErrorKind::SortMismatch,
           "'" + to_string(a->op) + "' expects " +
               std::to_string(params.size()) + " argument(s), got " +
               std::to_string(a->args.size()));
    for (size_t i = 0; i < params.size(); ++i) {
      TypePtr found = infer_term_sort(a->args[i], ctx);
      if (!ctx.sort_matches(params[i], found))
        fail(ErrorKind::SortMismatch,
             "argument " + std::to_string(i + 1) + " of '" + to_string(a->op) +
                 "': expected " + pretty_print(params[i]) + ", found " +
                 pretty_print(found));
    }
    return result;
  }
  // case term
  const auto& c = std::get<Case>(t->node);
  TypePtr scrutinee_sort = infer_term_sort(c.scrutinee, ctx);
  const auto* sr = std::get_if<SortRef>(&scrutinee_sort->node);
  const InductiveDecl* ind = sr ? ctx.inductive(sr->name) : nullptr;
  if (!ind)
    fail(ErrorKind::SortMismatch,
         "case scrutinee has non-inductive sort " +
             pretty_print(scrutinee_sort));
  TypePtr branch_sort;
  for (const auto& b : c.branches) {
    const InductiveCtor* ctor = nullptr;
    for (const auto& cand : ind->ctors)
      if (cand.name == b.ctor) ctor = &cand;
    if (!ctor)
      fail(ErrorKind::UnknownName,
           "'" + b.ctor.text + "' is not a constructor of '" +
               ind->name.text + "'");
    auto [params, result] = detail::flatten_signature(ctor->type);
    if (params.size() != b.binders.size())
      fail(ErrorKind::SortMismatch,
           "pattern '" + b.ctor.text + "' binds " +
               std::to_string(b.binders.size()) + " variable(s), expected " +
               std::to_string(params.size()));
    SortContext inner = ctx;
    for (size_t i = 0; i < params.size(); ++i)
      inner.push_bound(b.binders[i], params[i]);
    TypePtr bs = infer_term_sort(b.body, inner);
    if (!branch_sort)
      branch_sort = bs;
    else if (!ctx.sort_matches(branch_sort, bs) &&
             !ctx.sort_matches(bs, branch_sort))
      fail(ErrorKind::SortMismatch,
           "case branches disagree: " + pretty_print(branch_sort) + " vs " +
               pretty_print(bs));
  }
  if (!branch_sort)
    fail(ErrorKind::SortMismatch, "case term has no branches");
  return branch_sort;
}

// Missing, duplicate, and unknown constructors of one case analysis.
inline std::vector<Diagnostic> check_case_exhaustive(const Case& c,
                                                     const InductiveDecl& ind) {
  std::vector<Diagnostic> out;
  std::set<Name> seen;
  for (const auto& b : c.branches) {
    bool known = false;
    for (const auto& ctor : ind.ctors)
      if (ctor.name == b.ctor) known = true;
    if (!known) {
      out.push_back({Severity::Error,
                     "unknown constructor '" + b.ctor.text + "' in case over '" +
                         ind.name.text + "'",
                     {}, {}, {}});
      continue;
    }
    if (!seen.insert(b.ctor).second)
      out.push_back({Severity::Error,
                     "duplicate branch '" + b.ctor.text + "'",
                     {}, {}, {}});
  }
  for (const auto& ctor : ind.ctors)
    if (!seen.count(ctor.name))
      out.push_back({Severity::Error,
                     "missing constructor '" + ctor.name.text + "' in case over '" +
                         ind.name.text + "'",
                     {}, {}, {}});
  return out;
}

namespace detail {

struct Checker {
  TheoryPresentation p;
  SortContext ctx;
  std::vector<Diagnostic> diags;

  void report(Severity s, const std::string& msg, const Name& decl,
              SourcePos pos) {
    diags.push_back({s, msg, p.name, decl, pos});
  }

  void check_type(const TypePtr& t, const Name& decl, SourcePos pos) {
    if (const auto* sr = std::get_if<SortRef>(&t->node)) {
      if (!ctx.is_sort(sr->name))
        report(Severity::Error, "unknown sort '" + sr->name.text + "'", decl,
               pos);
      return;
    }
    if (const auto* fr = std::get_if<FieldTypeRef>(&t->node)) {
      if (!ctx.record_of(fr->record)) {
        report(Severity::Error,
               "'" + fr->record.text + "' is not a record-typed value", decl,
               pos);
        return;
      }
      if (!ctx.field_type(fr->record, fr->field))
        report(Severity::Error,
               "unknown field '" + fr->record.text + "." + fr->field.text + "'",
               decl, pos);
      return;
    }
    if (const auto* fn = std::get_if<FunctionType>(&t->node)) {
      for (const auto& a : fn->args) check_type(a, decl, pos);
      check_type(fn->result, decl, pos);
      return;
    }
    if (const auto* pr = std::get_if<PredicateType>(&t->node)) {
      for (const auto& a : pr->args) check_type(a, decl, pos);
      return;
    }
    if (const auto* rec = std::get_if<RecordType>(&t->node)) {
      // Record fields form their own scope; later fields may use earlier
      // ones.
      SortContext saved = ctx;
      std::set<Name> seen;
      for (const auto& f : rec->fields) {
        if (!seen.insert(f.name).second)
          report(Severity::Error,
                 "duplicate record field '" + f.name.text + "'", decl, pos);
        if (std::holds_alternative<TypeKind>(f.type->node)) {
          ctx.declare_sort(f.name);
          continue;
        }
        check_type(f.type, decl, pos);
        ctx.declare_op(f.name, f.type);
      }
      ctx = std::move(saved);
      return;
    }
    if (const auto* dt = std::get_if<DataType>(&t->node)) {
      SortContext saved = ctx;
      ctx.declare_sort(dt->binder);
      for (const auto& c : dt->ctors) check_type(c.type, decl, pos);
      ctx = std::move(saved);
      return;
    }
    if (const auto* pf = std::get_if<ProofOf>(&t->node)) {
      if (detail::contains_type_app(pf->body)) {
        report(Severity::Note,
               "proof field mentions an uninterpreted type application; "
               "not checked",
               decl, pos);
        return;
      }
      check_formula(pf->body, decl, pos);
      return;
    }
    // TypeKind / TypeApp: kind annotations are fine; type applications are
    // uninterpreted and handled by the caller.
  }

  void check_term(const TermPtr& t, const Name& decl, SourcePos pos) {
    try {
      infer_term_sort(t, ctx);
    } catch (const Error& e) {
      report(Severity::Error, e.what(), decl, pos);
      return;
    }
    check_cases_in(t, decl, pos);
  }

  void check_cases_in(const TermPtr& t, const Name& decl, SourcePos pos) {
    if (const auto* a = std::get_if<Apply>(&t->node)) {
      for (const auto& x : a->args) check_cases_in(x, decl, pos);
      return;
    }
    if (const auto* c = std::get_if<Case>(&t->node)) {
      TypePtr s;
      try {
        s = infer_term_sort(c->scrutinee, ctx);
      } catch (const Error&) {
        return;  // already reported by check_term
      }
      if (const auto* sr = std::get_if<SortRef>(&s->node))
        if (const InductiveDecl* ind = ctx.inductive(sr->name))
          for (auto d : check_case_exhaustive(*c, *ind)) {
            d.theory = p.name;
            d.decl = decl;
            d.pos = pos;
            diags.push_back(std::move(d));
          }
      check_cases_in(c->scrutinee, decl, pos);
      for (const auto& b : c->branches) check_cases_in(b.body, decl, pos);
    }
  }

  void check_formula(const FormulaPtr& f, const Name& decl, SourcePos pos) {
    if (const auto* e = std::get_if<Equal>(&f->node)) {
      try {
        TypePtr l = infer_term_sort(e->lhs, ctx);
        TypePtr r = infer_term_sort(e->rhs, ctx);
        if (!ctx.sort_matches(l, r) && !ctx.sort_matches(r, l))
          report(Severity::Error,
                 "equation sides have different sorts: " + pretty_print(l) +
                     " vs " + pretty_print(r),
                 decl, pos);
      } catch (const Error& err) {
        report(Severity::Error, err.what(), decl, pos);
      }
      check_cases_in(e->lhs, decl, pos);
      check_cases_in(e->rhs, decl, pos);
      return;
    }
    if (const auto* fa = std::get_if<Forall>(&f->node)) {
      std::set<Name> binder_names;
      for (const auto& b : fa->binders) {
        if (!binder_names.insert(b.var).second)
          report(Severity::Error,
                 "duplicate bound variable '" + b.var.text + "'", decl, pos);
        if (ctx.is_declared(b.var))
          report(Severity::Warning,
                 "bound variable '" + b.var.text +
                     "' shadows a declared symbol",
                 decl, pos);
        check_type(b.type, decl, pos);
      }
      SortContext saved = ctx;
      for (const auto& b : fa->binders) ctx.push_bound(b.var, b.type);
      check_formula(fa->body, decl, pos);
      ctx = std::move(saved);
      return;
    }
    if (const auto* n = std::get_if<Not>(&f->node))
      return check_formula(n->body, decl, pos);
    if (const auto* a = std::get_if<And>(&f->node)) {
      check_formula(a->lhs, decl, pos);
      check_formula(a->rhs, decl, pos);
      return;
    }
    if (const auto* o = std::get_if<Or>(&f->node)) {
      check_formula(o->lhs, decl, pos);
      check_formula(o->rhs, decl, pos);
      return;
    }
    if (const auto* i = std::get_if<Implies>(&f->node)) {
      check_formula(i->lhs, decl, pos);
      check_formula(i->rhs, decl, pos);
      return;
    }
    if (const auto* d = std::get_if<DefinedIn>(&f->node)) {
      try {
        infer_term_sort(d->term, ctx);
      } catch (const Error& err) {
        report(Severity::Error, err.what(), decl, pos);
      }
      check_type(d->type, decl, pos);
      return;
    }
    if (const auto* s = std::get_if<Subtype>(&f->node)) {
      check_type(s->sub, decl, pos);
      check_type(s->super, decl, pos);
      return;
    }
    if (std::get_if<PropertyMacro>(&f->node)) {
      report(Severity::Error, "unexpanded property macro", decl, pos);
      return;
    }
    const auto& at = std::get<Atom>(f->node);
    // A proposition atom must be a predicate application.
    if (const auto* ap = std::get_if<Apply>(&at.term->node)) {
      TypePtr pred_type;
      if (ap->op.qualifier) {
        auto ft = ctx.field_type(*ap->op.qualifier, ap->op.name);
        if (!ft) {
          report(Severity::Error, "unknown field '" + to_string(ap->op) + "'",
                 decl, pos);
          return;
        }
        pred_type = *ft;
      } else if (auto d = ctx.op_type(ap->op.name)) {
        pred_type = *d;
      } else {
        report(Severity::Error,
               "unknown operation '" + to_string(ap->op) + "'", decl, pos);
        return;
      }
      if (const auto* pr = std::get_if<PredicateType>(&pred_type->node)) {
        if (pr->args.size() != ap->args.size()) {
          report(Severity::Error,
                 "predicate '" + to_string(ap->op) + "' expects " +
                     std::to_string(pr->args.size()) + " argument(s)",
                 decl, pos);
          return;
        }
        for (size_t i = 0; i < pr->args.size(); ++i) {
          try {
            TypePtr found = infer_term_sort(ap->args[i], ctx);
            if (!ctx.sort_matches(pr->args[i], found))
              report(Severity::Error,
                     "argument " + std::to_string(i + 1) + " of '" +
                         to_string(ap->op) + "': expected " +
                         pretty_print(pr->args[i]) + ", found " +
                         pretty_print(found),
                     decl, pos);
          } catch (const Error& err) {
            report(Severity::Error, err.what(), decl, pos);
          }
        }
        return;
      }
    }
    report(Severity::Error, "term used as a proposition", decl, pos);
  }

  void check_decl(const Declaration& d) {
    const Name& n = decl_name(d);
    if (const auto* op = std::get_if<OpDecl>(&d.node)) {
      check_type(op->type, n, d.pos);
      ctx.declare_op(n, op->type);
      return;
    }
    if (std::holds_alternative<TypeDecl>(d.node)) {
      ctx.declare_sort(n);
      return;
    }
    if (const auto* ax = std::get_if<AxiomDecl>(&d.node)) {
      if (detail::contains_type_app(ax->body)) {
        report(Severity::Note,
               "axiom '" + n.text +
                   "' mentions an uninterpreted type application; not checked",
               n, d.pos);
      } else {
        check_formula(ax->body, n, d.pos);
      }
      if (const auto* sub = std::get_if<Subtype>(&ax->body->node))
        ctx.add_subtype_fact(sub->sub, sub->super);
      return;
    }
    if (const auto* ind = std::get_if<InductiveDecl>(&d.node)) {
      ctx.declare_inductive(*ind);  // constructors may recurse
      std::set<Name> seen;
      for (const auto& c : ind->ctors) {
        if (!seen.insert(c.name).second)
          report(Severity::Error,
                 "duplicate constructor '" + c.name.text + "'", n, d.pos);
        check_type(c.type, n, d.pos);
        auto [params, result] = detail::flatten_signature(c.type);
        const auto* sr = std::get_if<SortRef>(&result->node);
        if (!sr || sr->name != ind->name)
          report(Severity::Error,
                 "constructor '" + c.name.text + "' does not produce '" +
                     ind->name.text + "'",
                 n, d.pos);
      }
      return;
    }
    if (const auto* def = std::get_if<DefDecl>(&d.node)) {
      check_type(def->type, n, d.pos);
      ctx.declare_op(n, def->type);
      auto [params, result] = detail::flatten_signature(def->type);
      for (const auto& cl : def->clauses) {
        const auto* lhs = std::get_if<Apply>(&cl.lhs->node);
        if (!lhs || lhs->op.qualifier || lhs->op.name != n) {
          report(Severity::Error,
                 "definition clause must apply '" + n.text + "'", n, d.pos);
          continue;
        }
        if (lhs->args.size() != params.size()) {
          report(Severity::Error,
                 "definition of '" + n.text + "' takes " +
                     std::to_string(lhs->args.size()) +
                     " pattern(s), signature has " +
                     std::to_string(params.size()),
                 n, d.pos);
          continue;
        }
        SortContext saved = ctx;
        bool ok = true;
        for (size_t i = 0; i < params.size(); ++i)
          ok = bind_pattern(lhs->args[i], params[i], n, d.pos) && ok;
        if (ok) {
          try {
            TypePtr found = infer_term_sort(cl.rhs, ctx);
            if (!ctx.sort_matches(result, found))
              report(Severity::Error,
                     "clause of '" + n.text + "' returns " +
                         pretty_print(found) + ", expected " +
                         pretty_print(result),
                     n, d.pos);
          } catch (const Error& e) {
            report(Severity::Error, e.what(), n, d.pos);
          }
          check_cases_in(cl.rhs, n, d.pos);
        }
        ctx = std::move(saved);
      }
      return;
    }
    const auto& td = std::get<TypeDefDecl>(d.node);
    check_type(td.def, n, d.pos);
    ctx.declare_typedef(n, td.def);
  }

  bool bind_pattern(const TermPtr& pat, const TypePtr& sort, const Name& decl,
                    SourcePos pos) {
    if (const auto* v = std::get_if<Var>(&pat->node)) {
      if (ctx.is_declared(v->name) && !ctx.op_type(v->name))
        report(Severity::Warning,
               "pattern variable '" + v->name.text + "' shadows a sort", decl,
               pos);
      ctx.push_bound(v->name, sort);
      return true;
    }
    if (const auto* ap = std::get_if<Apply>(&pat->node)) {
      const auto* sr = std::get_if<SortRef>(&sort->node);
      const InductiveDecl* ind = sr ? ctx.inductive(sr->name) : nullptr;
      if (!ind) {
        report(Severity::Error,
               "constructor pattern over non-inductive sort " +
                   pretty_print(sort),
               decl, pos);
        return false;
      }
      for (const auto& c : ind->ctors) {
        if (c.name != ap->op.name) continue;
        auto [params, result] = detail::flatten_signature(c.type);
        if (params.size() != ap->args.size()) {
          report(Severity::Error,
                 "pattern '" + c.name.text + "' has wrong arity", decl, pos);
          return false;
        }
        bool ok = true;
        for (size_t i = 0; i < params.size(); ++i)
          ok = bind_pattern(ap->args[i], params[i], decl, pos) && ok;
        return ok;
      }
      report(Severity::Error,
             "'" + ap->op.name.text + "' is not a constructor of '" +
                 sr->name.text + "'",
             decl, pos);
      return false;
    }
    report(Severity::Error, "invalid pattern", decl, pos);
    return false;
  }
};

}  // namespace detail

// Empty diagnostics iff every declaration is well-formed. The input must be
// macro-expanded. Formulas mentioning uninterpreted type applications (such
// as `domain(prime)`) are noted and skipped.
inline std::vector<Diagnostic> check_theory(const TheoryPresentation& p) {
  detail::Checker checker{p, {}, {}};
  // Subtype axioms act as facts for later declarations regardless of order.
  for (const auto& d : p.decls)
    if (const auto* ax = std::get_if<AxiomDecl>(&d.node))
      if (const auto* sub = std::get_if<Subtype>(&ax->body->node))
        checker.ctx.add_subtype_fact(sub->sub, sub->super);
  std::set<Name> seen;
  for (const auto& d : p.decls) {
    if (!seen.insert(decl_name(d)).second)
      checker.report(Severity::Error,
                     "duplicate declaration '" + decl_name(d).text + "'",
                     decl_name(d), d.pos);
    checker.check_decl(d);
  }
  return std::move(checker.diags);
}

// Subtype/definedness acceptance: both sides must resolve; diagnostics, no
// exceptions.
inline std::vector<Diagnostic> check_subtype_and_definedness(
    const FormulaPtr& f, SortContext ctx) {
  detail::Checker checker{TheoryPresentation{}, std::move(ctx), {}};
  checker.check_formula(f, Name{}, SourcePos{});
  return std::move(checker.diags);
}

// Context with every declaration of `p` in scope (including subtype facts).
inline SortContext context_of(const TheoryPresentation& p) {
  SortContext ctx;
  for (const auto& d : p.decls) {
    if (const auto* t = std::get_if<TypeDecl>(&d.node)) {
      ctx.declare_sort(t->name);
    } else if (const auto* o = std::get_if<OpDecl>(&d.node)) {
      ctx.declare_op(o->name, o->type);
    } else if (const auto* ax = std::get_if<AxiomDecl>(&d.node)) {
      if (const auto* sub = std::get_if<Subtype>(&ax->body->node))
        ctx.add_subtype_fact(sub->sub, sub->super);
    } else if (const auto* ind = std::get_if<InductiveDecl>(&d.node)) {
      ctx.declare_inductive(*ind);
    } else if (const auto* def = std::get_if<DefDecl>(&d.node)) {
      ctx.declare_op(def->name, def->type);
    } else if (const auto* td = std::get_if<TypeDefDecl>(&d.node)) {
      ctx.declare_typedef(td->name, td->def);
    }
  }
  return ctx;
}

}  // namespace theoria
