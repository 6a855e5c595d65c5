#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "theoria/alpha.hpp"
#include "theoria/ast.hpp"
#include "theoria/error.hpp"
#include "theoria/parser.hpp"
#include "theoria/renaming.hpp"

// Property macros: named axiom schemas such as `associative((*))` expanding
// to a closed quantified formula over fresh variables, with the quantified
// sorts read off the argument operations' signatures.

namespace theoria {

struct OpSignature {
  std::vector<TypePtr> args;  // empty for constants
  TypePtr result;             // null for predicates
  bool is_predicate = false;
};

// Resolves an operation reference (possibly record-qualified) to its
// signature within the presentation a macro is being expanded in.
using SignatureLookup =
    std::function<std::optional<OpSignature>(const OpName&)>;

inline SignatureLookup signature_lookup_for(const TheoryPresentation& p) {
  return [&p](const OpName& op) -> std::optional<OpSignature> {
    auto from_type = [](const TypePtr& t) -> std::optional<OpSignature> {
      if (const auto* f = std::get_if<FunctionType>(&t->node))
        return OpSignature{f->args, f->result, false};
      if (const auto* pr = std::get_if<PredicateType>(&t->node))
        return OpSignature{pr->args, nullptr, true};
      if (std::holds_alternative<SortRef>(t->node) ||
          std::holds_alternative<FieldTypeRef>(t->node))
        return OpSignature{{}, t, false};
      return std::nullopt;
    };
    if (!op.qualifier) {
      for (const auto& d : p.decls) {
        if (decl_name(d) != op.name) continue;
        if (const auto* o = std::get_if<OpDecl>(&d.node)) return from_type(o->type);
        if (const auto* f = std::get_if<DefDecl>(&d.node)) return from_type(f->type);
        return std::nullopt;
      }
      // Inductive constructors are operations too.
      for (const auto& d : p.decls)
        if (const auto* ind = std::get_if<InductiveDecl>(&d.node))
          for (const auto& c : ind->ctors)
            if (c.name == op.name) return from_type(c.type);
      return std::nullopt;
    }
    // Qualified: find the record type of the qualifying value and read the
    // field's type, re-qualifying sort references to earlier fields.
    const Declaration* qd = p.find(*op.qualifier);
    if (!qd) return std::nullopt;
    const auto* qop = std::get_if<OpDecl>(&qd->node);
    if (!qop) return std::nullopt;
    TypePtr rec_type = qop->type;
    if (const auto* sr = std::get_if<SortRef>(&rec_type->node)) {
      const Declaration* td = p.find(sr->name);
      if (!td) return std::nullopt;
      if (const auto* tdd = std::get_if<TypeDefDecl>(&td->node))
        rec_type = tdd->def;
    }
    const auto* rec = std::get_if<RecordType>(&rec_type->node);
    if (!rec) return std::nullopt;
    std::set<Name> field_names;
    for (const auto& f : rec->fields) field_names.insert(f.name);
    for (const auto& f : rec->fields) {
      if (f.name != op.name) continue;
      std::map<Name, Name> qualify;  // handled below via a rebuild
      auto requalify = [&](const TypePtr& t, auto&& self) -> TypePtr {
        if (const auto* sr = std::get_if<SortRef>(&t->node)) {
          if (field_names.count(sr->name))
            return mk::field_type(*op.qualifier, sr->name);
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
      (void)qualify;
      return from_type(requalify(f.type, requalify));
    }
    return std::nullopt;
  };
}

namespace detail {

// A reference to an operation as a term: constants are plain variables,
// qualified references are nullary applications.
inline TermPtr op_ref_term(const OpName& op) {
  if (op.qualifier) return mk::apply(op, {});
  return mk::var(op.name);
}

inline TermPtr op_apply(const OpName& op, std::vector<TermPtr> args) {
  return mk::apply(op, std::move(args));
}

inline std::vector<Name> fresh_vars(size_t count, const std::set<Name>& avoid) {
  static const char* preferred[] = {"x", "y", "z", "w"};
  std::vector<Name> out;
  size_t k = 0;
  while (out.size() < count) {
    Name candidate;
    if (k < 4)
      candidate = Name{preferred[k]};
    else
      candidate = Name{"x" + std::to_string(k - 2)};
    ++k;
    if (!avoid.count(candidate)) out.push_back(candidate);
  }
  return out;
}

}  // namespace detail

class PropertyMacroTable {
 public:
  using Expander = std::function<FormulaPtr(
      const std::vector<OpName>& args, const SignatureLookup& sig,
      const std::set<Name>& avoid)>;

  struct Entry {
    int arity;
    Expander expand;
  };

  bool contains(const Name& n) const { return table_.count(n) > 0; }

  int arity(const Name& n) const {
    auto it = table_.find(n);
    return it == table_.end() ? -1 : it->second.arity;
  }

  void add(Name name, int arity, Expander e) {
    table_[std::move(name)] = Entry{arity, std::move(e)};
  }

  FormulaPtr expand(const PropertyMacro& m, const SignatureLookup& sig,
                    const std::set<Name>& avoid) const {
    auto it = table_.find(m.name);
    if (it == table_.end())
      fail(ErrorKind::UnknownMacro, "unknown property macro '" + m.name.text + "'");
    if (static_cast<int>(m.args.size()) != it->second.arity)
      fail(ErrorKind::ArityMismatch,
           "macro '" + m.name.text + "' expects " +
               std::to_string(it->second.arity) + " argument(s), got " +
               std::to_string(m.args.size()));
    return it->second.expand(m.args, sig, avoid);
  }

  std::vector<Name> names() const {
    std::vector<Name> out;
    for (const auto& [k, v] : table_) out.push_back(k);
    return out;
  }

  static PropertyMacroTable builtins();

  // Extra macros from a file: `name/arity := template`, one per line,
  // `%` comments. Templates name their operation arguments $1..$n and the
  // primary sort of the k-th argument $Sk.
  void load_templates(const std::string& text);

 private:
  std::map<Name, Entry> table_;
};

namespace detail {

[[noreturn]] inline void bad_macro_arg(const std::string& macro,
                                       const OpName& arg,
                                       const std::string& why) {
  fail(ErrorKind::NonOperationArgument,
       "macro " + macro + ": argument '" + to_string(arg) + "' " + why);
}

inline OpSignature require_sig(const std::string& macro, const OpName& arg,
                               const SignatureLookup& sig) {
  auto s = sig(arg);
  if (!s) bad_macro_arg(macro, arg, "does not name a declared operation");
  return *s;
}

// f : (A, A) -> A over a single sort.
inline TypePtr require_binary_homogeneous(const std::string& macro,
                                          const OpName& arg,
                                          const SignatureLookup& sig) {
  OpSignature s = require_sig(macro, arg, sig);
  if (s.is_predicate || s.args.size() != 2)
    bad_macro_arg(macro, arg, "is not a binary operation");
  if (!alpha_equal(s.args[0], s.args[1]) || !alpha_equal(s.args[0], s.result))
    bad_macro_arg(macro, arg, "is not homogeneous over one sort");
  return s.args[0];
}

}  // namespace detail

inline PropertyMacroTable PropertyMacroTable::builtins() {
  using namespace detail;
  PropertyMacroTable t;

  t.add("associative", 1, [](const std::vector<OpName>& a,
                             const SignatureLookup& sig,
                             const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("associative", a[0], sig);
    auto v = fresh_vars(3, avoid);
    auto [x, y, z] = std::tuple{mk::var(v[0]), mk::var(v[1]), mk::var(v[2])};
    return mk::forall({{v[0], u}, {v[1], u}, {v[2], u}},
                      mk::equal(op_apply(a[0], {op_apply(a[0], {x, y}), z}),
                                op_apply(a[0], {x, op_apply(a[0], {y, z})})));
  });

  t.add("commutative", 1, [](const std::vector<OpName>& a,
                             const SignatureLookup& sig,
                             const std::set<Name>& avoid) {
    OpSignature s = require_sig("commutative", a[0], sig);
    if (s.is_predicate || s.args.size() != 2 ||
        !alpha_equal(s.args[0], s.args[1]))
      bad_macro_arg("commutative", a[0],
                    "is not a binary operation over one sort");
    auto v = fresh_vars(2, avoid);
    auto [x, y] = std::tuple{mk::var(v[0]), mk::var(v[1])};
    return mk::forall({{v[0], s.args[0]}, {v[1], s.args[0]}},
                      mk::equal(op_apply(a[0], {x, y}),
                                op_apply(a[0], {y, x})));
  });

  t.add("idempotent", 1, [](const std::vector<OpName>& a,
                            const SignatureLookup& sig,
                            const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("idempotent", a[0], sig);
    auto v = fresh_vars(1, avoid);
    TermPtr x = mk::var(v[0]);
    return mk::forall({{v[0], u}}, mk::equal(op_apply(a[0], {x, x}), x));
  });

  // leftIdentity(f, c): c f x = x, quantifying over f's second argument sort.
  t.add("leftIdentity", 2, [](const std::vector<OpName>& a,
                              const SignatureLookup& sig,
                              const std::set<Name>& avoid) {
    OpSignature f = require_sig("leftIdentity", a[0], sig);
    OpSignature c = require_sig("leftIdentity", a[1], sig);
    if (f.is_predicate || f.args.size() != 2)
      bad_macro_arg("leftIdentity", a[0], "is not a binary operation");
    if (!c.args.empty())
      bad_macro_arg("leftIdentity", a[1], "is not a constant");
    auto v = fresh_vars(1, avoid);
    TermPtr x = mk::var(v[0]);
    return mk::forall({{v[0], f.args[1]}},
                      mk::equal(op_apply(a[0], {op_ref_term(a[1]), x}), x));
  });

  t.add("rightIdentity", 2, [](const std::vector<OpName>& a,
                               const SignatureLookup& sig,
                               const std::set<Name>& avoid) {
    OpSignature f = require_sig("rightIdentity", a[0], sig);
    OpSignature c = require_sig("rightIdentity", a[1], sig);
    if (f.is_predicate || f.args.size() != 2)
      bad_macro_arg("rightIdentity", a[0], "is not a binary operation");
    if (!c.args.empty())
      bad_macro_arg("rightIdentity", a[1], "is not a constant");
    auto v = fresh_vars(1, avoid);
    TermPtr x = mk::var(v[0]);
    return mk::forall({{v[0], f.args[0]}},
                      mk::equal(op_apply(a[0], {x, op_ref_term(a[1])}), x));
  });

  t.add("leftDistributive", 2, [](const std::vector<OpName>& a,
                                  const SignatureLookup& sig,
                                  const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("leftDistributive", a[0], sig);
    TypePtr u2 = require_binary_homogeneous("leftDistributive", a[1], sig);
    if (!alpha_equal(u, u2))
      bad_macro_arg("leftDistributive", a[1],
                    "acts on a different sort than the first argument");
    auto v = fresh_vars(3, avoid);
    auto [x, y, z] = std::tuple{mk::var(v[0]), mk::var(v[1]), mk::var(v[2])};
    return mk::forall(
        {{v[0], u}, {v[1], u}, {v[2], u}},
        mk::equal(op_apply(a[0], {x, op_apply(a[1], {y, z})}),
                  op_apply(a[1], {op_apply(a[0], {x, y}),
                                  op_apply(a[0], {x, z})})));
  });

  t.add("rightDistributive", 2, [](const std::vector<OpName>& a,
                                   const SignatureLookup& sig,
                                   const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("rightDistributive", a[0], sig);
    TypePtr u2 = require_binary_homogeneous("rightDistributive", a[1], sig);
    if (!alpha_equal(u, u2))
      bad_macro_arg("rightDistributive", a[1],
                    "acts on a different sort than the first argument");
    auto v = fresh_vars(3, avoid);
    auto [x, y, z] = std::tuple{mk::var(v[0]), mk::var(v[1]), mk::var(v[2])};
    return mk::forall(
        {{v[0], u}, {v[1], u}, {v[2], u}},
        mk::equal(op_apply(a[0], {op_apply(a[1], {y, z}), x}),
                  op_apply(a[1], {op_apply(a[0], {y, x}),
                                  op_apply(a[0], {z, x})})));
  });

  t.add("leftAnnihilative", 2, [](const std::vector<OpName>& a,
                                  const SignatureLookup& sig,
                                  const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("leftAnnihilative", a[0], sig);
    OpSignature c = require_sig("leftAnnihilative", a[1], sig);
    if (!c.args.empty())
      bad_macro_arg("leftAnnihilative", a[1], "is not a constant");
    auto v = fresh_vars(1, avoid);
    TermPtr x = mk::var(v[0]);
    TermPtr zero = op_ref_term(a[1]);
    return mk::forall({{v[0], u}},
                      mk::equal(op_apply(a[0], {zero, x}), zero));
  });

  t.add("rightAnnihilative", 2, [](const std::vector<OpName>& a,
                                   const SignatureLookup& sig,
                                   const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("rightAnnihilative", a[0], sig);
    OpSignature c = require_sig("rightAnnihilative", a[1], sig);
    if (!c.args.empty())
      bad_macro_arg("rightAnnihilative", a[1], "is not a constant");
    auto v = fresh_vars(1, avoid);
    TermPtr x = mk::var(v[0]);
    TermPtr zero = op_ref_term(a[1]);
    return mk::forall({{v[0], u}},
                      mk::equal(op_apply(a[0], {x, zero}), zero));
  });

  // involutive(u): quantifies over the operation's argument sort directly.
  t.add("involutive", 1, [](const std::vector<OpName>& a,
                            const SignatureLookup& sig,
                            const std::set<Name>& avoid) {
    OpSignature s = require_sig("involutive", a[0], sig);
    if (s.is_predicate || s.args.size() != 1 ||
        !alpha_equal(s.args[0], s.result))
      bad_macro_arg("involutive", a[0], "is not a unary operation on one sort");
    auto v = fresh_vars(1, avoid);
    TermPtr x = mk::var(v[0]);
    return mk::forall(
        {{v[0], s.args[0]}},
        mk::equal(op_apply(a[0], {op_apply(a[0], {x})}), x));
  });

  // antiCommutative(f, n): x f y = n(y f x).
  t.add("antiCommutative", 2, [](const std::vector<OpName>& a,
                                 const SignatureLookup& sig,
                                 const std::set<Name>& avoid) {
    TypePtr u = require_binary_homogeneous("antiCommutative", a[0], sig);
    OpSignature n = require_sig("antiCommutative", a[1], sig);
    if (n.is_predicate || n.args.size() != 1)
      bad_macro_arg("antiCommutative", a[1], "is not a unary operation");
    auto v = fresh_vars(2, avoid);
    auto [x, y] = std::tuple{mk::var(v[0]), mk::var(v[1])};
    return mk::forall({{v[0], u}, {v[1], u}},
                      mk::equal(op_apply(a[0], {x, y}),
                                op_apply(a[1], {op_apply(a[0], {y, x})})));
  });

  return t;
}

inline void PropertyMacroTable::load_templates(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto cut = line.find('%');
    if (cut != std::string::npos) line.resize(cut);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;

    auto slash = line.find('/');
    auto assign = line.find(":=");
    if (slash == std::string::npos || assign == std::string::npos ||
        slash > assign)
      fail(ErrorKind::Parse,
           "macro table line " + std::to_string(lineno) +
               ": expected 'name/arity := template'");
    std::string name = line.substr(0, slash);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
      name.pop_back();
    int arity = std::stoi(line.substr(slash + 1, assign - slash - 1));
    FormulaPtr templ = parse_formula(line.substr(assign + 2));

    add(Name{name}, arity,
        [templ, arity, name](const std::vector<OpName>& args,
                             const SignatureLookup& sig,
                             const std::set<Name>& avoid) -> FormulaPtr {
          std::map<Name, Name> subst;
          for (int k = 0; k < arity; ++k) {
            const OpName& a = args[k];
            if (a.qualifier)
              detail::bad_macro_arg(name, a,
                                    "qualified arguments are not supported "
                                    "by template macros");
            subst[Name{"$" + std::to_string(k + 1)}] = a.name;
            OpSignature s = detail::require_sig(name, a, sig);
            TypePtr primary = s.args.empty() ? s.result : s.args[0];
            const auto* sr = std::get_if<SortRef>(&primary->node);
            if (!sr)
              detail::bad_macro_arg(name, a, "has no plain primary sort");
            subst[Name{"$S" + std::to_string(k + 1)}] = sr->name;
          }
          (void)avoid;
          return detail::Renamer{}.formula(subst, templ);
        });
  }
}

}  // namespace theoria
