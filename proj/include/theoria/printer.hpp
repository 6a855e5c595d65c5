#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "theoria/alpha.hpp"
#include "theoria/ast.hpp"
#include "theoria/parser.hpp"

// Deterministic rendering of presentations and definitions. Output reparses
// to alpha-equal structures; declaration order is preserved.

namespace theoria {

struct PrintOptions {
  // When set, a typedef declaration with this name prints as the generator
  // abbreviation `type N = TypeFrom(Origin)` instead of the expanded type.
  std::optional<std::pair<Name, Name>> typefrom_abbrev;
};

namespace detail {

struct Printer {
  PrintOptions opts;

  static bool infix_apply(const Apply& a) {
    return a.args.size() == 2 && is_operator_name(a.op.name);
  }

  std::string term(const TermPtr& t, bool parenthesize_infix = false) const {
    struct V {
      const Printer& p;
      bool paren;
      std::string operator()(const Var& v) { return v.name.text; }
      std::string operator()(const Apply& a) {
        if (infix_apply(a)) {
          std::string s = p.term(a.args[0], true) + " " + to_string(a.op) +
                          " " + p.term(a.args[1], true);
          return paren ? "(" + s + ")" : s;
        }
        if (a.args.empty()) return to_string(a.op);
        std::string s = to_string(a.op) + "(";
        for (size_t i = 0; i < a.args.size(); ++i) {
          if (i) s += ", ";
          s += p.term(a.args[i]);
        }
        return s + ")";
      }
      std::string operator()(const Case& c) {
        std::string s = "case " + p.term(c.scrutinee) + " of { ";
        for (const auto& b : c.branches) {
          s += "| " + b.ctor.text;
          if (!b.binders.empty()) {
            s += "(";
            for (size_t i = 0; i < b.binders.size(); ++i) {
              if (i) s += ", ";
              s += b.binders[i].text;
            }
            s += ")";
          }
          s += " -> " + p.term(b.body) + " ";
        }
        return s + "}";
      }
    };
    return std::visit(V{*this, parenthesize_infix}, t->node);
  }

  std::string type(const TypePtr& t) const {
    struct V {
      const Printer& p;
      std::string operator()(const SortRef& s) { return s.name.text; }
      std::string operator()(const FieldTypeRef& f) {
        return f.record.text + "." + f.field.text;
      }
      std::string operator()(const FunctionType& f) {
        std::string s;
        if (f.args.size() == 1 &&
            !std::holds_alternative<FunctionType>(f.args[0]->node)) {
          s = p.type(f.args[0]);
        } else {
          s = "(";
          for (size_t i = 0; i < f.args.size(); ++i) {
            if (i) s += ", ";
            s += p.type(f.args[i]);
          }
          s += ")";
        }
        return s + " -> " + p.type(f.result);
      }
      std::string operator()(const PredicateType& pr) {
        if (pr.args.size() == 1) return p.type(pr.args[0]) + " ?";
        std::string s = "(";
        for (size_t i = 0; i < pr.args.size(); ++i) {
          if (i) s += ", ";
          s += p.type(pr.args[i]);
        }
        return s + ")?";
      }
      std::string operator()(const TypeKind&) { return "type"; }
      std::string operator()(const RecordType& r) {
        std::string s = "{";
        for (size_t i = 0; i < r.fields.size(); ++i) {
          if (i) s += ", ";
          s += r.fields[i].name.text + " : " + p.type(r.fields[i].type);
        }
        return s + "}";
      }
      std::string operator()(const DataType& d) {
        std::string s = "data " + d.binder.text + " .";
        for (size_t i = 0; i < d.ctors.size(); ++i) {
          s += i ? " | " : " ";
          s += d.ctors[i].name.text + " : " + p.type(d.ctors[i].type);
        }
        return s;
      }
      std::string operator()(const ProofOf& pf) {
        return "ProofOf(" + p.formula(pf.body) + ")";
      }
      std::string operator()(const TypeApp& a) {
        std::string s = a.head.text + "(";
        for (size_t i = 0; i < a.args.size(); ++i) {
          if (i) s += ", ";
          s += a.args[i].text;
        }
        return s + ")";
      }
    };
    return std::visit(V{*this}, t->node);
  }

  // Precedence: implies 0, or 1, and 2, not 3, atoms 4.
  static int formula_rank(const FormulaPtr& f) {
    if (std::holds_alternative<Implies>(f->node)) return 0;
    if (std::holds_alternative<Forall>(f->node)) return 0;
    if (std::holds_alternative<Or>(f->node)) return 1;
    if (std::holds_alternative<And>(f->node)) return 2;
    if (std::holds_alternative<Not>(f->node)) return 3;
    return 4;
  }

  std::string formula(const FormulaPtr& f, int min_rank = 0) const {
    struct V {
      const Printer& p;
      std::string operator()(const Equal& e) {
        return p.term(e.lhs) + " = " + p.term(e.rhs);
      }
      std::string operator()(const Forall& fa) {
        std::string s = "forall ";
        for (size_t i = 0; i < fa.binders.size();) {
          size_t j = i;
          while (j + 1 < fa.binders.size() &&
                 alpha_equal(fa.binders[j + 1].type, fa.binders[i].type))
            ++j;
          if (i) s += ", ";
          for (size_t k = i; k <= j; ++k) {
            if (k > i) s += ", ";
            s += fa.binders[k].var.text;
          }
          s += " : " + p.type(fa.binders[i].type);
          i = j + 1;
        }
        return s + ". " + p.formula(fa.body);
      }
      std::string operator()(const Not& n) {
        return "not (" + p.formula(n.body) + ")";
      }
      std::string operator()(const And& a) {
        return p.formula(a.lhs, 2) + " and " + p.formula(a.rhs, 3);
      }
      std::string operator()(const Or& o) {
        return p.formula(o.lhs, 1) + " or " + p.formula(o.rhs, 2);
      }
      std::string operator()(const Implies& i) {
        return p.formula(i.lhs, 1) + " implies " + p.formula(i.rhs, 0);
      }
      std::string operator()(const DefinedIn& d) {
        return "defined-in(" + p.term(d.term) + ", " + p.type(d.type) + ")";
      }
      std::string operator()(const Subtype& s) {
        return p.type(s.sub) + " <: " + p.type(s.super);
      }
      std::string operator()(const PropertyMacro& m) {
        std::string s = m.name.text + "(";
        for (size_t i = 0; i < m.args.size(); ++i) {
          if (i) s += ", ";
          if (!m.args[i].qualifier && is_operator_name(m.args[i].name))
            s += "(" + m.args[i].name.text + ")";
          else
            s += to_string(m.args[i]);
        }
        return s + ")";
      }
      std::string operator()(const Atom& a) { return p.term(a.term); }
    };
    std::string s = std::visit(V{*this}, f->node);
    if (formula_rank(f) < min_rank) return "(" + s + ")";
    return s;
  }

  // One declaration can render to several statements (a definition prints
  // its signature followed by its clauses).
  std::vector<std::string> decl(const Declaration& d) const {
    struct V {
      const Printer& p;
      std::vector<std::string> operator()(const TypeDecl& t) {
        return {t.name.text + " : type"};
      }
      std::vector<std::string> operator()(const OpDecl& o) {
        return {o.name.text + " : " + p.type(o.type)};
      }
      std::vector<std::string> operator()(const AxiomDecl& a) {
        return {"axiom " + a.name.text + " := " + p.formula(a.body)};
      }
      std::vector<std::string> operator()(const InductiveDecl& ind) {
        std::string s = "Inductive " + ind.name.text;
        for (const auto& c : ind.ctors)
          s += " | " + c.name.text + " : " + p.type(c.type);
        return {s};
      }
      std::vector<std::string> operator()(const DefDecl& def) {
        std::vector<std::string> out;
        out.push_back(def.name.text + " : " + p.type(def.type));
        for (const auto& cl : def.clauses)
          out.push_back(p.term(cl.lhs) + " = " + p.term(cl.rhs));
        return out;
      }
      std::vector<std::string> operator()(const TypeDefDecl& td) {
        if (p.opts.typefrom_abbrev && p.opts.typefrom_abbrev->first == td.name)
          return {"type " + td.name.text + " = TypeFrom(" +
                  p.opts.typefrom_abbrev->second.text + ")"};
        return {"type " + td.name.text + " = " + p.type(td.def)};
      }
    };
    return std::visit(V{*this}, d.node);
  }
};

}  // namespace detail

inline std::string pretty_print(const TermPtr& t) {
  return detail::Printer{}.term(t);
}
inline std::string pretty_print(const TypePtr& t) {
  return detail::Printer{}.type(t);
}
inline std::string pretty_print(const FormulaPtr& f) {
  return detail::Printer{}.formula(f);
}

inline std::string pretty_print(const TheoryPresentation& p,
                                const PrintOptions& opts = {}) {
  detail::Printer pr{opts};
  std::ostringstream os;
  os << p.name.text << " := Theory {";
  std::vector<std::string> stmts;
  for (const auto& d : p.decls)
    for (auto& s : pr.decl(d)) stmts.push_back(std::move(s));
  for (size_t i = 0; i < stmts.size(); ++i) {
    os << "\n  " << stmts[i];
    if (i + 1 < stmts.size()) os << ";";
  }
  os << (stmts.empty() ? "}" : "\n}");
  return os.str();
}

inline std::string pretty_print(const Renaming& r) {
  std::string s = "[";
  bool first = true;
  for (const auto& [from, to] : r.pairs()) {
    if (!first) s += ", ";
    first = false;
    s += from.text + " |-> " + to.text;
  }
  return s + "]";
}

inline std::string pretty_print(const Definition& def) {
  detail::Printer pr{};
  std::ostringstream os;
  os << def.name.text << " := ";
  struct V {
    std::ostringstream& os;
    detail::Printer& pr;
    void block(const std::vector<Declaration>& decls) {
      os << "{";
      std::vector<std::string> stmts;
      for (const auto& d : decls)
        for (auto& s : pr.decl(d)) stmts.push_back(std::move(s));
      for (size_t i = 0; i < stmts.size(); ++i) {
        os << "\n  " << stmts[i];
        if (i + 1 < stmts.size()) os << ";";
      }
      os << (stmts.empty() ? "}" : "\n}");
    }
    void operator()(const TheoryExpr::Literal& l) {
      os << "Theory ";
      block(l.decls);
    }
    void operator()(const TheoryExpr::ExtendedBy& e) {
      os << e.base.text << " extended by ";
      block(e.decls);
    }
    void operator()(const TheoryExpr::RenameOf& r) {
      os << r.base.text << " " << pretty_print(r.renaming);
    }
    void operator()(const TheoryExpr::CombineOver& c) {
      os << "combine ";
      for (size_t i = 0; i < c.parts.size(); ++i) {
        if (i) os << ", ";
        os << c.parts[i].text;
      }
      os << " over " << c.over.text;
    }
    void operator()(const TheoryExpr::InstanceOf& i) {
      os << "instance " << i.source.text << " of " << i.base.text << " via "
         << pretty_print(i.via);
    }
    void operator()(const TheoryExpr::GeneratorCall& g) {
      switch (g.kind) {
        case GenKind::TypeFrom: os << "TypeFrom(" << g.arg.text << ")"; break;
        case GenKind::TermAlgebra: os << "&" << g.arg.text; break;
        case GenKind::Homomorphism:
          os << "Homomorphism(" << g.arg.text << ")";
          break;
        case GenKind::Substructure:
          os << "Substructure(" << g.arg.text << ")";
          break;
      }
    }
  };
  std::visit(V{os, pr}, def.expr.node);
  return os.str();
}

inline std::string pretty_print(const SourceFile& file) {
  std::string out;
  for (const auto& def : file.definitions) {
    out += pretty_print(def);
    out += "\n";
  }
  return out;
}

}  // namespace theoria
