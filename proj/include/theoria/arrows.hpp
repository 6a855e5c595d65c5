#pragma once

#include <vector>

#include "theoria/alpha.hpp"
#include "theoria/ast.hpp"
#include "theoria/renaming.hpp"

// Arrows record the morphisms induced by the library constructions: a
// renaming of the source presentation whose image is intensionally included
// in the target. An inductive type declaration counts as realizing an
// abstract type declaration of the same name, and a defined operation as
// realizing an operation signature; instances depend on this.

namespace theoria {

enum class Provenance { Extension, Rename, Instance, CombineLeg, Composite };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Extension: return "extension";
    case Provenance::Rename: return "rename";
    case Provenance::Instance: return "instance";
    case Provenance::CombineLeg: return "combine-leg";
    case Provenance::Composite: return "composite";
  }
  return "?";
}

struct Arrow {
  Name source;
  Name target;
  Renaming renaming;
  Provenance provenance = Provenance::Composite;

  auto operator<=>(const Arrow&) const = default;
};

// An axiom required by an asserted arrow but not syntactically present in
// the target; recorded, never discharged.
struct ProofObligation {
  Name source;  // theory owing the axiom (the arrow's source)
  Name target;
  Name axiom;
  FormulaPtr body;
};

namespace detail {

// Does some declaration of `target` realize declaration `d`?
inline bool has_counterpart(const Declaration& d,
                            const TheoryPresentation& target) {
  const Name& n = decl_name(d);
  const Declaration* t = target.find(n);
  if (t && alpha_equal(d, *t)) return true;
  if (std::holds_alternative<TypeDecl>(d.node))
    return t && std::holds_alternative<InductiveDecl>(t->node);
  if (const auto* op = std::get_if<OpDecl>(&d.node)) {
    if (t) {
      if (const auto* def = std::get_if<DefDecl>(&t->node))
        return alpha_equal(op->type, def->type);
      return false;
    }
    for (const auto& td : target.decls)
      if (const auto* ind = std::get_if<InductiveDecl>(&td.node))
        for (const auto& c : ind->ctors)
          if (c.name == n && alpha_equal(op->type, c.type)) return true;
    return false;
  }
  return false;
}

}  // namespace detail

// Checks the inclusion condition for an arrow: every renamed source
// declaration must have a counterpart in the target. Missing signature
// symbols raise BrokenArrow; missing axioms are obligations for
// instance-provenance arrows and BrokenArrow otherwise.
inline std::vector<ProofObligation> validate_arrow(
    const Arrow& a, const TheoryPresentation& source,
    const TheoryPresentation& target) {
  std::vector<ProofObligation> obligations;
  TheoryPresentation renamed = apply_renaming(source, a.renaming);
  for (const auto& d : renamed.decls) {
    if (detail::has_counterpart(d, target)) continue;
    if (const auto* ax = std::get_if<AxiomDecl>(&d.node)) {
      if (a.provenance == Provenance::Instance) {
        obligations.push_back({a.source, a.target, ax->name, ax->body});
        continue;
      }
      fail(ErrorKind::BrokenArrow,
           "axiom '" + ax->name.text + "' of '" + a.source.text +
               "' has no counterpart in '" + a.target.text + "'");
    }
    fail(ErrorKind::BrokenArrow,
         "symbol '" + decl_name(d).text + "' of '" + a.source.text +
             "' has no counterpart in '" + a.target.text + "'");
  }
  return obligations;
}

}  // namespace theoria
