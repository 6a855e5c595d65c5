#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include "test_util.hpp"

using namespace theoria;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

std::set<std::string> ctor_set(const TypePtr& t) {
  const auto* d = std::get_if<DataType>(&t->node);
  REQUIRE(d != nullptr);
  std::set<std::string> out;
  for (const auto& c : d->ctors)
    out.insert(c.name.text + " : " + pretty_print(c.type));
  return out;
}

}  // namespace

TEST_CASE("gen_record_type") {
  SECTION("Semigroup gives the three-field model record") {
    TypePtr record = gen_record_type(tu::base_env().theory(Name{"Semigroup"}));
    TypePtr expected = mk::type({RecordType{{
        {Name{"U"}, mk::kind()},
        {Name{"*"},
         mk::fn({mk::sort(Name{"U"}), mk::sort(Name{"U"})}, mk::sort(Name{"U"}))},
        {Name{"associative_*"},
         mk::proof_of(parse_formula(
             "forall x, y, z : U. (x * y) * z = x * (y * z)"))},
    }}});
    REQUIRE(alpha_equal(record, expected));
  }
  SECTION("Carrier gives a single type field") {
    TypePtr record = gen_record_type(tu::base_env().theory(Name{"Carrier"}));
    const auto* r = std::get_if<RecordType>(&record->node);
    REQUIRE(r != nullptr);
    REQUIRE(r->fields.size() == 1);
    CHECK(r->fields[0].name == Name{"U"});
    CHECK(std::holds_alternative<TypeKind>(r->fields[0].type->node));
  }
  SECTION("inductive declarations are rejected") {
    CHECK(throws_kind(ErrorKind::UnsupportedDeclaration, [&] {
      gen_record_type(tu::corpus_env().theory(Name{"Bit_Base"}));
    }));
  }
  SECTION("concrete definitions are rejected") {
    CHECK(throws_kind(ErrorKind::UnsupportedDeclaration, [&] {
      gen_record_type(tu::corpus_env().theory(Name{"Bit_And"}));
    }));
  }
}

TEST_CASE("gen_term_algebra") {
  SECTION("Monoid gives unit and product constructors") {
    TypePtr t = gen_term_algebra(tu::corpus_env().theory(Name{"Monoid"}));
    CHECK(ctor_set(t) ==
          std::set<std::string>{"#e : X", "#* : (X, X) -> X"});
  }
  SECTION("Carrier gives the empty term algebra") {
    TypePtr t = gen_term_algebra(tu::base_env().theory(Name{"Carrier"}));
    const auto* d = std::get_if<DataType>(&t->node);
    REQUIRE(d != nullptr);
    CHECK(d->ctors.empty());
  }
  SECTION("Semigroup gives one constructor") {
    TypePtr t = gen_term_algebra(tu::base_env().theory(Name{"Semigroup"}));
    CHECK(ctor_set(t) == std::set<std::string>{"#* : (X, X) -> X"});
  }
  SECTION("multi-sorted input is rejected") {
    CHECK(throws_kind(ErrorKind::NotSingleSorted, [&] {
      gen_term_algebra(tu::base_env().theory(Name{"MultiCarrier"}));
    }));
  }
  SECTION("two sorts are rejected") {
    TheoryPresentation p = tu::theory_of(
        "T := Theory { U : type; S : type; f : (U, U) -> U }");
    CHECK(throws_kind(ErrorKind::NotSingleSorted,
                      [&] { gen_term_algebra(p); }));
  }
  SECTION("operations over a foreign sort are rejected") {
    TheoryPresentation p;
    p.name = Name{"T"};
    p.decls.push_back(mk::type_decl(Name{"U"}));
    p.decls.push_back(mk::op_decl(
        Name{"f"}, mk::fn({mk::sort(Name{"V"})}, mk::sort(Name{"U"}))));
    CHECK(throws_kind(ErrorKind::ForeignSort, [&] { gen_term_algebra(p); }));
  }
  SECTION("the binder avoids clashing with declared symbols") {
    TheoryPresentation p =
        tu::theory_of("T := Theory { X : type; f : (X, X) -> X }");
    TypePtr t = gen_term_algebra(p);
    const auto* d = std::get_if<DataType>(&t->node);
    REQUIRE(d != nullptr);
    CHECK(d->binder != Name{"X"});
  }
}

TEST_CASE("gen_homomorphism") {
  SECTION("SemigroupH matches the expected shape") {
    TheoryPresentation hom =
        gen_homomorphism(tu::base_env().theory(Name{"Semigroup"}));
    CHECK(hom.name == Name{"SemigroupH"});
    REQUIRE(hom.decls.size() == 5);

    TheoryPresentation expected;
    expected.name = Name{"SemigroupH"};
    expected.decls.push_back(mk::typedef_decl(
        Name{"SemigroupType"},
        gen_record_type(tu::base_env().theory(Name{"Semigroup"}))));
    expected.decls.push_back(
        mk::op_decl(Name{"A"}, mk::sort(Name{"SemigroupType"})));
    expected.decls.push_back(
        mk::op_decl(Name{"B"}, mk::sort(Name{"SemigroupType"})));
    expected.decls.push_back(mk::op_decl(
        Name{"f"}, mk::fn({mk::field_type(Name{"A"}, Name{"U"})},
                          mk::field_type(Name{"B"}, Name{"U"}))));
    expected.decls.push_back(mk::axiom_decl(
        Name{"pres_*"},
        parse_formula("forall x, y:A.U . f(x A.* y) = f(x) B.* f(y)")));
    REQUIRE(alpha_equal_as_set(hom, expected));
  }
  SECTION("Carrier gives maps and no preservation axioms") {
    TheoryPresentation hom =
        gen_homomorphism(tu::base_env().theory(Name{"Carrier"}));
    CHECK(tu::count_axioms(hom) == 0);
    CHECK(hom.find(Name{"f"}) != nullptr);
  }
  SECTION("VectorSpace gives exactly five preservation axioms") {
    TheoryPresentation hom =
        gen_homomorphism(tu::corpus_env().theory(Name{"VectorSpace"}));
    std::vector<Name> axioms = tu::axiom_names(hom);
    REQUIRE(axioms.size() == 5);
    std::set<Name> names(axioms.begin(), axioms.end());
    CHECK(names == std::set<Name>{Name{"pres_0"}, Name{"pres_1"},
                                  Name{"pres_+"}, Name{"pres_neg"},
                                  Name{"pres_*"}});
    // The nullary cases map across models: f_V(A.0) = B.0, f_F(A.1) = B.1.
    const auto* pres0 = std::get_if<AxiomDecl>(&hom.find(Name{"pres_0"})->node);
    REQUIRE(pres0 != nullptr);
    CHECK(alpha_equal(pres0->body, parse_formula("f_V(A.0) = B.0")));
    const auto* pres1 = std::get_if<AxiomDecl>(&hom.find(Name{"pres_1"})->node);
    REQUIRE(pres1 != nullptr);
    CHECK(alpha_equal(pres1->body, parse_formula("f_F(A.1) = B.1")));
  }
  SECTION("relations are preserved in the forward direction") {
    TheoryPresentation hom =
        gen_homomorphism(tu::base_env().theory(Name{"BinaryRelation"}));
    const auto* pres = std::get_if<AxiomDecl>(&hom.find(Name{"pres_R"})->node);
    REQUIRE(pres != nullptr);
    CHECK(alpha_equal(
        pres->body,
        parse_formula(
            "forall x, y : A.U. A.R(x, y) implies B.R(f(x), f(y))")));
  }
}

TEST_CASE("gen_substructure") {
  SECTION("SubSemigroup matches the expected shape") {
    TheoryPresentation sub =
        gen_substructure(tu::base_env().theory(Name{"Semigroup"}));
    CHECK(sub.name == Name{"SubSemigroup"});
    TheoryPresentation expected;
    expected.name = Name{"SubSemigroup"};
    expected.decls.push_back(mk::typedef_decl(
        Name{"SemigroupType"},
        gen_record_type(tu::base_env().theory(Name{"Semigroup"}))));
    expected.decls.push_back(
        mk::op_decl(Name{"A"}, mk::sort(Name{"SemigroupType"})));
    expected.decls.push_back(mk::type_decl(Name{"V"}));
    expected.decls.push_back(mk::axiom_decl(
        Name{"subtype_V"}, mk::subtype(mk::sort(Name{"V"}),
                                       mk::field_type(Name{"A"}, Name{"U"}))));
    expected.decls.push_back(mk::axiom_decl(
        Name{"pres_*"},
        parse_formula("forall x, y:V . defined-in(x A.* y, V)")));
    REQUIRE(alpha_equal_as_set(sub, expected));
  }
  SECTION("Carrier keeps only the subtype structure") {
    TheoryPresentation sub =
        gen_substructure(tu::base_env().theory(Name{"Carrier"}));
    REQUIRE(sub.decls.size() == 4);
    CHECK(tu::count_axioms(sub) == 1);
  }
  SECTION("constants must stay inside the substructure") {
    TheoryPresentation sub =
        gen_substructure(tu::base_env().theory(Name{"PointedCarrier"}));
    const auto* pres = std::get_if<AxiomDecl>(&sub.find(Name{"pres_e"})->node);
    REQUIRE(pres != nullptr);
    CHECK(alpha_equal(pres->body, parse_formula("defined-in(A.e, V)")));
  }
  SECTION("multi-sorted input is rejected") {
    CHECK(throws_kind(ErrorKind::NotSingleSorted, [&] {
      gen_substructure(tu::corpus_env().theory(Name{"VectorSpace"}));
    }));
  }
  SECTION("relations restrict automatically") {
    TheoryPresentation sub =
        gen_substructure(tu::base_env().theory(Name{"BinaryRelation"}));
    CHECK(tu::count_axioms(sub) == 1);  // only the subtype axiom
  }
}

TEST_CASE("traverse_theory") {
  const TheoryPresentation& lns =
      tu::corpus_env().theory(Name{"LeftNearSemiring"});

  SECTION("the identity visitor rebuilds the presentation") {
    TheoryPresentation same = map_theory(lns, identity_fold());
    CHECK(alpha_equal_ordered(same, lns));
  }
  SECTION("an axiom-dropping visitor leaves the signature") {
    DeclFold<std::optional<Declaration>> fold = identity_fold();
    fold.on_axiom = [](const AxiomDecl&) { return std::nullopt; };
    TheoryPresentation sig = map_theory(lns, fold);
    REQUIRE(sig.decls.size() == 4);  // U, *, +, 0
  }
  SECTION("the record generator agrees with a direct fold over the corpus") {
    const LibraryEnv& env = tu::corpus_env();
    for (const auto& name : env.order) {
      const TheoryPresentation& p = env.theory(name);
      bool applicable = true;
      for (const auto& d : p.decls)
        if (std::holds_alternative<InductiveDecl>(d.node) ||
            std::holds_alternative<DefDecl>(d.node) ||
            std::holds_alternative<TypeDefDecl>(d.node))
          applicable = false;
      if (!applicable) continue;
      // Independent oracle: assemble the record by hand.
      std::vector<RecordField> fields;
      for (const auto& d : p.decls) {
        if (const auto* t = std::get_if<TypeDecl>(&d.node))
          fields.push_back({t->name, mk::kind()});
        else if (const auto* o = std::get_if<OpDecl>(&d.node))
          fields.push_back({o->name, o->type});
        else if (const auto* a = std::get_if<AxiomDecl>(&d.node))
          fields.push_back({a->name, mk::proof_of(a->body)});
      }
      TypePtr expected = mk::type({RecordType{std::move(fields)}});
      INFO("theory " << name.text);
      CHECK(alpha_equal(gen_record_type(p), expected));
    }
  }
}

TEST_CASE("generated theories typecheck over the corpus") {
  const LibraryEnv& env = tu::corpus_env();
  size_t hom_count = 0, sub_count = 0;
  for (const auto& name : env.order) {
    const TheoryPresentation& p = env.theory(name);
    try {
      TheoryPresentation hom = gen_homomorphism(p);
      INFO("hom of " << name.text);
      CHECK_FALSE(has_errors(check_theory(hom)));
      ++hom_count;

      // Count law: one preservation axiom per operation or relation.
      size_t ops = 0;
      for (const auto& d : p.decls)
        if (std::holds_alternative<OpDecl>(d.node)) ++ops;
      CHECK(tu::count_axioms(hom) == ops);
    } catch (const Error&) {
    }
    try {
      TheoryPresentation sub = gen_substructure(p);
      INFO("sub of " << name.text);
      CHECK_FALSE(has_errors(check_theory(sub)));
      ++sub_count;

      size_t closure = 0, predicates = 0;
      for (const auto& d : p.decls)
        if (const auto* o = std::get_if<OpDecl>(&d.node)) {
          if (std::holds_alternative<PredicateType>(o->type->node))
            ++predicates;
          else
            ++closure;
        }
      CHECK(tu::count_axioms(sub) == closure + 1);
    } catch (const Error&) {
    }
    try {
      TypePtr terms = gen_term_algebra(p);
      const auto* d = std::get_if<DataType>(&terms->node);
      REQUIRE(d != nullptr);
      size_t ops = 0;
      for (const auto& dd : p.decls)
        if (const auto* o = std::get_if<OpDecl>(&dd.node))
          if (!std::holds_alternative<PredicateType>(o->type->node)) ++ops;
      CHECK(d->ctors.size() == ops);
    } catch (const Error&) {
    }
  }
  // The corpus has plenty of abstract theories these apply to.
  CHECK(hom_count >= 30);
  CHECK(sub_count >= 25);
}

TEST_CASE("top-level generator definitions become theories") {
  LibraryEnv env = tu::elaborate_text(
      "Magma := Theory { U : type; * : (U, U) -> U }\n"
      "Semigroup := Magma extended by { axiom associative_* : "
      "associative((*)) }\n"
      "SemigroupH := Homomorphism(Semigroup)\n"
      "SubSemigroup := Substructure(Semigroup)\n"
      "SemigroupTerm := &Semigroup\n"
      "SemigroupModel := TypeFrom(Semigroup)\n");
  for (const char* name :
       {"SemigroupH", "SubSemigroup", "SemigroupTerm", "SemigroupModel"}) {
    INFO(name);
    REQUIRE(env.has(Name{name}));
    CHECK_FALSE(has_errors(check_theory(env.theory(Name{name}))));
    CHECK(env.artifacts.count(Name{name}) == 1);
  }
  const auto* td = std::get_if<TypeDefDecl>(
      &env.theory(Name{"SemigroupTerm"}).decls.at(0).node);
  REQUIRE(td != nullptr);
  CHECK(std::holds_alternative<DataType>(td->def->node));
}

TEST_CASE("homomorphism generation is natural under renaming") {
  TheoryPresentation semigroup = tu::base_env().theory(Name{"Semigroup"});
  Renaming r = Renaming::of({{"*", "+"}, {"associative_*", "associative_+"}});
  TheoryPresentation renamed_first = gen_homomorphism(apply_renaming(semigroup, r));

  Renaming lifted = Renaming::of({{"*", "+"},
                                  {"associative_*", "associative_+"},
                                  {"pres_*", "pres_+"}});
  TheoryPresentation generated_first =
      apply_renaming(gen_homomorphism(semigroup), lifted);
  REQUIRE(alpha_equal_as_set(renamed_first, generated_first));
}
