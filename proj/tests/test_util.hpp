#pragma once

#include <string>
#include <vector>

#include "theoria/theoria.hpp"

// Shared fixtures: corpus paths, parsing helpers, and hand-built paper
// listings used as goldens.

namespace tu {

using namespace theoria;

inline std::string corpus_dir() { return THEORIA_CORPUS_DIR; }

inline std::vector<std::string> corpus_files() {
  return {corpus_dir() + "/base.msl", corpus_dir() + "/algebra.msl",
          corpus_dir() + "/concrete.msl"};
}

inline LibraryEnv& corpus_env() {
  static LibraryEnv env = elaborate_files(corpus_files());
  return env;
}

inline LibraryEnv& base_env() {
  static LibraryEnv env = elaborate_files({corpus_dir() + "/base.msl"});
  return env;
}

// Elaborates an inline source snippet (optionally on top of other sources).
inline LibraryEnv elaborate_text(const std::string& text) {
  return elaborate_library(parse_library(text));
}

// Parses a single `N := Theory { ... }` literal and elaborates it (macros
// expanded against its own declarations).
inline TheoryPresentation theory_of(const std::string& text) {
  LibraryEnv env = elaborate_text(text);
  if (env.order.size() != 1) throw std::runtime_error("expected one theory");
  return env.theory(env.order[0]);
}

inline size_t count_axioms(const TheoryPresentation& p) {
  size_t n = 0;
  for (const auto& d : p.decls)
    if (std::holds_alternative<AxiomDecl>(d.node)) ++n;
  return n;
}

inline std::vector<Name> axiom_names(const TheoryPresentation& p) {
  std::vector<Name> out;
  for (const auto& d : p.decls)
    if (std::holds_alternative<AxiomDecl>(d.node)) out.push_back(decl_name(d));
  return out;
}

inline bool is_error_free(const std::vector<Diagnostic>& diags) {
  return !has_errors(diags);
}

// Figure 1, verbatim.
inline const char* fig1_text() {
  return R"(LeftNearSemiring := Theory {
  U : type;
  * : (U, U) -> U;
  + : (U, U) -> U;
  0 : U;
  axiom right_Identity_+_0 := forall x : U.  x + 0 = x;
  axiom leftIdentity_+_0 := forall x : U. 0 + x = x;
  axiom leftDistributive_*_+ :=
    forall x,y,z : U. x * (y + z) = (x * y) + (x * z);
  axiom left0 := forall x : U. 0 * x = 0;
  axiom associative_+ :=
    forall x,y,z : U.  (x + y) + z = x + (y + z);
  axiom associative_* :=
    forall x,y,z : U.  (x * y) * z = x * (y * z)}
)";
}

// Figure 2, verbatim (14 definitions).
inline const char* fig2_text() {
  return R"(Empty := Theory {}
Carrier := Empty extended by { U : type }
PointedCarrier := Carrier extended by { e : U }
UnaryOperation := Carrier extended by { prime : U -> U }
PointedUnarySystem :=
  combine UnaryOperation, PointedCarrier over Carrier
DoublyPointed := PointedCarrier extended by { e2 : U }
BinaryOperation := Carrier extended by { ** : (U,U) -> U }
Magma := BinaryOperation [** |-> *]
CarrierS := Carrier[U |-> S]
MultiCarrier := combine Carrier, CarrierS over Empty
UnaryRelation := Carrier extended by { R : U ?}
BinaryRelation := Carrier extended by { R : (U,U)?  }
InvolutiveUnarySystem := UnaryOperation extended by {
  axiom involutive_prime :
    forall x:domain(prime). prime(prime x) = x
}
Semigroup := Magma extended by {
  axiom associative_* : associative((*)) }
)";
}

inline TheoryPresentation fig1_presentation() {
  return theory_of(fig1_text());
}

}  // namespace tu
