#pragma once

#include <string>

#include "json.hpp"
#include "theoria/arrows.hpp"
#include "theoria/ast.hpp"
#include "theoria/elaborator.hpp"

// Lossless JSON serialization of presentations and arrows. Formulas are
// nested prefix trees with explicit binder lists; declarations are
// {kind, name, ...} objects.

namespace theoria {

using json = nlohmann::ordered_json;

json to_json(const TypePtr& t);
json to_json(const TermPtr& t);
json to_json(const FormulaPtr& f);

inline json to_json(const OpName& op) {
  json j{{"name", op.name.text}};
  if (op.qualifier) j["record"] = op.qualifier->text;
  return j;
}

inline json to_json(const TypePtr& t) {
  struct V {
    json operator()(const SortRef& s) {
      return {{"k", "sort"}, {"name", s.name.text}};
    }
    json operator()(const FieldTypeRef& f) {
      return {{"k", "field"}, {"record", f.record.text}, {"field", f.field.text}};
    }
    json operator()(const FunctionType& f) {
      json args = json::array();
      for (const auto& a : f.args) args.push_back(to_json(a));
      return {{"k", "fun"}, {"args", args}, {"result", to_json(f.result)}};
    }
    json operator()(const PredicateType& p) {
      json args = json::array();
      for (const auto& a : p.args) args.push_back(to_json(a));
      return {{"k", "pred"}, {"args", args}};
    }
    json operator()(const TypeKind&) { return {{"k", "kind"}}; }
    json operator()(const RecordType& r) {
      json fields = json::array();
      for (const auto& f : r.fields)
        fields.push_back({{"name", f.name.text}, {"type", to_json(f.type)}});
      return {{"k", "record"}, {"fields", fields}};
    }
    json operator()(const DataType& d) {
      json ctors = json::array();
      for (const auto& c : d.ctors)
        ctors.push_back({{"name", c.name.text}, {"type", to_json(c.type)}});
      return {{"k", "data"}, {"binder", d.binder.text}, {"constructors", ctors}};
    }
    json operator()(const ProofOf& p) {
      return {{"k", "proof"}, {"body", to_json(p.body)}};
    }
    json operator()(const TypeApp& a) {
      json args = json::array();
      for (const auto& n : a.args) args.push_back(n.text);
      return {{"k", "app"}, {"head", a.head.text}, {"args", args}};
    }
  };
  return std::visit(V{}, t->node);
}

inline json to_json(const TermPtr& t) {
  struct V {
    json operator()(const Var& v) {
      return {{"k", "var"}, {"name", v.name.text}};
    }
    json operator()(const Apply& a) {
      json args = json::array();
      for (const auto& x : a.args) args.push_back(to_json(x));
      return {{"k", "apply"}, {"op", to_json(a.op)}, {"args", args}};
    }
    json operator()(const Case& c) {
      json branches = json::array();
      for (const auto& b : c.branches) {
        json binders = json::array();
        for (const auto& n : b.binders) binders.push_back(n.text);
        branches.push_back({{"ctor", b.ctor.text},
                            {"binders", binders},
                            {"body", to_json(b.body)}});
      }
      return {{"k", "case"},
              {"scrutinee", to_json(c.scrutinee)},
              {"branches", branches}};
    }
  };
  return std::visit(V{}, t->node);
}

inline json to_json(const FormulaPtr& f) {
  struct V {
    json operator()(const Equal& e) {
      return {{"k", "equal"}, {"lhs", to_json(e.lhs)}, {"rhs", to_json(e.rhs)}};
    }
    json operator()(const Forall& fa) {
      json binders = json::array();
      for (const auto& b : fa.binders)
        binders.push_back({{"var", b.var.text}, {"type", to_json(b.type)}});
      return {{"k", "forall"}, {"binders", binders}, {"body", to_json(fa.body)}};
    }
    json operator()(const Not& n) {
      return {{"k", "not"}, {"body", to_json(n.body)}};
    }
    json operator()(const And& a) {
      return {{"k", "and"}, {"lhs", to_json(a.lhs)}, {"rhs", to_json(a.rhs)}};
    }
    json operator()(const Or& o) {
      return {{"k", "or"}, {"lhs", to_json(o.lhs)}, {"rhs", to_json(o.rhs)}};
    }
    json operator()(const Implies& i) {
      return {{"k", "implies"}, {"lhs", to_json(i.lhs)}, {"rhs", to_json(i.rhs)}};
    }
    json operator()(const DefinedIn& d) {
      return {{"k", "defined-in"},
              {"term", to_json(d.term)},
              {"type", to_json(d.type)}};
    }
    json operator()(const Subtype& s) {
      return {{"k", "subtype"}, {"sub", to_json(s.sub)}, {"super", to_json(s.super)}};
    }
    json operator()(const PropertyMacro& m) {
      json args = json::array();
      for (const auto& a : m.args) args.push_back(to_json(a));
      return {{"k", "macro"}, {"name", m.name.text}, {"args", args}};
    }
    json operator()(const Atom& a) {
      return {{"k", "atom"}, {"term", to_json(a.term)}};
    }
  };
  return std::visit(V{}, f->node);
}

inline json to_json(const Declaration& d) {
  struct V {
    json operator()(const TypeDecl& t) {
      return {{"kind", "type"}, {"name", t.name.text}};
    }
    json operator()(const OpDecl& o) {
      return {{"kind", "op"}, {"name", o.name.text}, {"type", to_json(o.type)}};
    }
    json operator()(const AxiomDecl& a) {
      return {{"kind", "axiom"}, {"name", a.name.text}, {"body", to_json(a.body)}};
    }
    json operator()(const InductiveDecl& i) {
      json ctors = json::array();
      for (const auto& c : i.ctors)
        ctors.push_back({{"name", c.name.text}, {"type", to_json(c.type)}});
      return {{"kind", "inductive"},
              {"name", i.name.text},
              {"constructors", ctors}};
    }
    json operator()(const DefDecl& d2) {
      json clauses = json::array();
      for (const auto& c : d2.clauses)
        clauses.push_back({{"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}});
      return {{"kind", "def"},
              {"name", d2.name.text},
              {"type", to_json(d2.type)},
              {"clauses", clauses}};
    }
    json operator()(const TypeDefDecl& td) {
      return {{"kind", "typedef"}, {"name", td.name.text}, {"def", to_json(td.def)}};
    }
  };
  return std::visit(V{}, d.node);
}

inline json to_json(const TheoryPresentation& p,
                    const std::string& provenance = "literal") {
  json decls = json::array();
  for (const auto& d : p.decls) decls.push_back(to_json(d));
  return {{"name", p.name.text}, {"provenance", provenance}, {"decls", decls}};
}

inline json to_json(const Arrow& a) {
  json renaming = json::object();
  for (const auto& [from, to] : a.renaming.pairs())
    renaming[from.text] = to.text;
  return {{"source", a.source.text},
          {"target", a.target.text},
          {"renaming", renaming},
          {"provenance", provenance_name(a.provenance)}};
}

// --- deserialization -------------------------------------------------------

TypePtr type_from_json(const json& j);
TermPtr term_from_json(const json& j);
FormulaPtr formula_from_json(const json& j);

inline OpName opname_from_json(const json& j) {
  if (j.contains("record"))
    return OpName{Name{j["record"].get<std::string>()},
                  Name{j["name"].get<std::string>()}};
  return OpName{Name{j["name"].get<std::string>()}};
}

inline TypePtr type_from_json(const json& j) {
  const std::string k = j.at("k").get<std::string>();
  if (k == "sort") return mk::sort(Name{j["name"].get<std::string>()});
  if (k == "field")
    return mk::field_type(Name{j["record"].get<std::string>()},
                          Name{j["field"].get<std::string>()});
  if (k == "fun") {
    std::vector<TypePtr> args;
    for (const auto& a : j["args"]) args.push_back(type_from_json(a));
    return mk::fn(std::move(args), type_from_json(j["result"]));
  }
  if (k == "pred") {
    std::vector<TypePtr> args;
    for (const auto& a : j["args"]) args.push_back(type_from_json(a));
    return mk::pred(std::move(args));
  }
  if (k == "kind") return mk::kind();
  if (k == "record") {
    std::vector<RecordField> fields;
    for (const auto& f : j["fields"])
      fields.push_back({Name{f["name"].get<std::string>()},
                        type_from_json(f["type"])});
    return mk::type({RecordType{std::move(fields)}});
  }
  if (k == "data") {
    std::vector<DataCtor> ctors;
    for (const auto& c : j["constructors"])
      ctors.push_back({Name{c["name"].get<std::string>()},
                       type_from_json(c["type"])});
    return mk::type({DataType{Name{j["binder"].get<std::string>()},
                              std::move(ctors)}});
  }
  if (k == "proof") return mk::proof_of(formula_from_json(j["body"]));
  if (k == "app") {
    std::vector<Name> args;
    for (const auto& a : j["args"]) args.push_back(Name{a.get<std::string>()});
    return mk::type_app(Name{j["head"].get<std::string>()}, std::move(args));
  }
  fail(ErrorKind::Parse, "bad type json kind '" + k + "'");
}

inline TermPtr term_from_json(const json& j) {
  const std::string k = j.at("k").get<std::string>();
  if (k == "var") return mk::var(Name{j["name"].get<std::string>()});
  if (k == "apply") {
    std::vector<TermPtr> args;
    for (const auto& a : j["args"]) args.push_back(term_from_json(a));
    return mk::apply(opname_from_json(j["op"]), std::move(args));
  }
  if (k == "case") {
    std::vector<CaseBranch> branches;
    for (const auto& b : j["branches"]) {
      std::vector<Name> binders;
      for (const auto& n : b["binders"])
        binders.push_back(Name{n.get<std::string>()});
      branches.push_back({Name{b["ctor"].get<std::string>()},
                          std::move(binders), term_from_json(b["body"])});
    }
    return mk::term(
        {Case{term_from_json(j["scrutinee"]), std::move(branches)}});
  }
  fail(ErrorKind::Parse, "bad term json kind '" + k + "'");
}

inline FormulaPtr formula_from_json(const json& j) {
  const std::string k = j.at("k").get<std::string>();
  if (k == "equal")
    return mk::equal(term_from_json(j["lhs"]), term_from_json(j["rhs"]));
  if (k == "forall") {
    std::vector<Binder> binders;
    for (const auto& b : j["binders"])
      binders.push_back(
          {Name{b["var"].get<std::string>()}, type_from_json(b["type"])});
    return mk::forall(std::move(binders), formula_from_json(j["body"]));
  }
  if (k == "not") return mk::lnot(formula_from_json(j["body"]));
  if (k == "and")
    return mk::land(formula_from_json(j["lhs"]), formula_from_json(j["rhs"]));
  if (k == "or")
    return mk::lor(formula_from_json(j["lhs"]), formula_from_json(j["rhs"]));
  if (k == "implies")
    return mk::implies(formula_from_json(j["lhs"]),
                       formula_from_json(j["rhs"]));
  if (k == "defined-in")
    return mk::defined_in(term_from_json(j["term"]), type_from_json(j["type"]));
  if (k == "subtype")
    return mk::subtype(type_from_json(j["sub"]), type_from_json(j["super"]));
  if (k == "macro") {
    std::vector<OpName> args;
    for (const auto& a : j["args"]) args.push_back(opname_from_json(a));
    return mk::macro(Name{j["name"].get<std::string>()}, std::move(args));
  }
  if (k == "atom") return mk::atom(term_from_json(j["term"]));
  fail(ErrorKind::Parse, "bad formula json kind '" + k + "'");
}

inline Declaration decl_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Name name{j.at("name").get<std::string>()};
  if (kind == "type") return mk::type_decl(std::move(name));
  if (kind == "op") return mk::op_decl(std::move(name), type_from_json(j["type"]));
  if (kind == "axiom")
    return mk::axiom_decl(std::move(name), formula_from_json(j["body"]));
  if (kind == "inductive") {
    std::vector<InductiveCtor> ctors;
    for (const auto& c : j["constructors"])
      ctors.push_back({Name{c["name"].get<std::string>()},
                       type_from_json(c["type"])});
    return mk::inductive_decl(std::move(name), std::move(ctors));
  }
  if (kind == "def") {
    std::vector<DefClause> clauses;
    for (const auto& c : j["clauses"])
      clauses.push_back({term_from_json(c["lhs"]), term_from_json(c["rhs"])});
    return mk::def_decl(std::move(name), type_from_json(j["type"]),
                        std::move(clauses));
  }
  if (kind == "typedef")
    return mk::typedef_decl(std::move(name), type_from_json(j["def"]));
  fail(ErrorKind::Parse, "bad declaration json kind '" + kind + "'");
}

inline TheoryPresentation theory_from_json(const json& j) {
  TheoryPresentation p;
  p.name = Name{j.at("name").get<std::string>()};
  for (const auto& d : j.at("decls")) p.decls.push_back(decl_from_json(d));
  return p;
}

}  // namespace theoria
