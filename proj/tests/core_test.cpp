#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace theoria;

TEST_CASE("apply_renaming renames declared names and free occurrences") {
  TheoryPresentation binop =
      tu::theory_of("BinaryOperation := Theory { U : type; ** : (U,U) -> U }");
  TheoryPresentation magma = apply_renaming(binop, Renaming::of({{"**", "*"}}));

  TheoryPresentation expected =
      tu::theory_of("Magma := Theory { U : type; * : (U, U) -> U }");
  REQUIRE(alpha_equal_as_set(magma, expected));

  SECTION("empty renaming is the identity") {
    TheoryPresentation same = apply_renaming(binop, Renaming{});
    REQUIRE(alpha_equal_ordered(same, binop));
  }

  SECTION("Carrier[U |-> S]") {
    TheoryPresentation carrier = tu::theory_of("Carrier := Theory { U : type }");
    TheoryPresentation s = apply_renaming(carrier, Renaming::of({{"U", "S"}}));
    REQUIRE(s.decls.size() == 1);
    REQUIRE(decl_name(s.decls[0]) == Name{"S"});
  }
}

TEST_CASE("apply_renaming leaves bound variables alone") {
  TheoryPresentation semigroup = tu::base_env().theory(Name{"Semigroup"});
  TheoryPresentation renamed = apply_renaming(
      semigroup,
      Renaming::of({{"*", "+"}, {"associative_*", "associative_+"}}));
  const auto* ax =
      std::get_if<AxiomDecl>(&renamed.find(Name{"associative_+"})->node);
  REQUIRE(ax != nullptr);
  FormulaPtr expected =
      parse_formula("forall x, y, z : U. (x + y) + z = x + (y + z)");
  REQUIRE(alpha_equal(ax->body, expected));
}

TEST_CASE("apply_renaming rejects capture and non-injective maps") {
  TheoryPresentation p = tu::theory_of("T := Theory { U : type; S : type }");
  REQUIRE_THROWS_MATCHES(
      apply_renaming(p, Renaming::of({{"U", "S"}})), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.kind() == ErrorKind::Capture; }));
  REQUIRE_THROWS_MATCHES(
      Renaming::of({{"U", "W"}, {"S", "W"}}), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.kind() == ErrorKind::InvalidRenaming;
      }));
}

TEST_CASE("apply_renaming alpha-renames a binder that would capture") {
  // Renaming e to x would capture the bound x in the axiom body.
  TheoryPresentation p = tu::theory_of(
      "T := Theory { U : type; e : U; + : (U, U) -> U;"
      " axiom a := forall x : U. x + e = x }");
  TheoryPresentation renamed = apply_renaming(p, Renaming::of({{"e", "x"}}));
  const auto* ax = std::get_if<AxiomDecl>(&renamed.find(Name{"a"})->node);
  REQUIRE(ax != nullptr);
  FormulaPtr expected = parse_formula("forall y : U. y + x = y");
  REQUIRE(alpha_equal(ax->body, expected));
}

TEST_CASE("compose_renamings") {
  SECTION("function composition") {
    Renaming r = compose_renamings(Renaming::of({{"a", "b"}}),
                                   Renaming::of({{"b", "c"}}));
    REQUIRE(r == Renaming::of({{"a", "c"}}));
  }
  SECTION("identity on the right") {
    Renaming r = compose_renamings(Renaming::of({{"a", "b"}}), Renaming{});
    REQUIRE(r == Renaming::of({{"a", "b"}}));
  }
  SECTION("inverse collapses to the identity") {
    Renaming r = compose_renamings(Renaming::of({{"U", "S"}}),
                                   Renaming::of({{"S", "U"}}));
    REQUIRE(r.empty());
  }
  SECTION("sequential application agrees with the composite") {
    // Independent oracle: applying both renamings one after the other must
    // equal applying the composite once.
    TheoryPresentation carrier = tu::theory_of("Carrier := Theory { U : type }");
    Renaming first = Renaming::of({{"U", "S"}});
    Renaming second = Renaming::of({{"S", "W"}});
    TheoryPresentation two_steps =
        apply_renaming(apply_renaming(carrier, first), second);
    TheoryPresentation one_step =
        apply_renaming(carrier, compose_renamings(first, second));
    REQUIRE(alpha_equal_ordered(two_steps, one_step));
  }
}

TEST_CASE("alpha_equal on declarations") {
  auto axiom = [](const std::string& name, const std::string& body) {
    return mk::axiom_decl(Name{name}, parse_formula(body));
  };
  SECTION("bound-variable renaming is invisible") {
    REQUIRE(alpha_equal(axiom("a", "forall x : U. x + 0 = x"),
                        axiom("a", "forall y : U. y + 0 = y")));
  }
  SECTION("distinct bodies differ") {
    REQUIRE_FALSE(alpha_equal(axiom("a", "forall x : U. x + 0 = x"),
                              axiom("a", "forall x : U. 0 + x = x")));
  }
  SECTION("names are part of the identity") {
    REQUIRE_FALSE(alpha_equal(axiom("a", "forall x : U. x + 0 = x"),
                              axiom("b", "forall x : U. x + 0 = x")));
  }
  SECTION("macro-expanded associativity matches the hand-written form") {
    TheoryPresentation semigroup = tu::base_env().theory(Name{"Semigroup"});
    const Declaration* expanded = semigroup.find(Name{"associative_*"});
    REQUIRE(expanded != nullptr);
    Declaration manual = mk::axiom_decl(
        Name{"associative_*"},
        parse_formula("forall x, y, z : U. (x * y) * z = x * (y * z)"));
    REQUIRE(alpha_equal(*expanded, manual));
  }
}

TEST_CASE("symbols_of") {
  REQUIRE(symbols_of(tu::theory_of("Empty := Theory {}")).empty());

  std::set<Name> semigroup =
      symbols_of(tu::base_env().theory(Name{"Semigroup"}));
  REQUIRE(semigroup ==
          std::set<Name>{Name{"U"}, Name{"*"}, Name{"associative_*"}});

  std::set<Name> lns =
      symbols_of(tu::corpus_env().theory(Name{"LeftNearSemiring"}));
  REQUIRE(lns.size() == 10);

  SECTION("inductive constructors are symbols") {
    std::set<Name> bits = symbols_of(tu::corpus_env().theory(Name{"Bit_Base"}));
    REQUIRE(bits == std::set<Name>{Name{"bit"}, Name{"0"}, Name{"1"}});
  }
}

TEST_CASE("validate_arrow") {
  const LibraryEnv& env = tu::corpus_env();

  SECTION("extension inclusion is clean") {
    Arrow a{Name{"Carrier"}, Name{"Magma"}, Renaming{}, Provenance::Extension};
    REQUIRE(validate_arrow(a, env).empty());
  }
  SECTION("instance arrow onto an inductive realization") {
    Arrow a{Name{"Carrier"}, Name{"BitCarrier"}, Renaming{},
            Provenance::Instance};
    REQUIRE(validate_arrow(a, env).empty());
  }
  SECTION("missing symbol raises BrokenArrow") {
    Arrow a{Name{"Semigroup"}, Name{"Carrier"}, Renaming{},
            Provenance::Extension};
    REQUIRE_THROWS_MATCHES(
        validate_arrow(a, env), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.kind() == ErrorKind::BrokenArrow;
        }));
  }
  SECTION("every recorded corpus arrow validates") {
    for (const auto& a : env.arrows) REQUIRE_NOTHROW(validate_arrow(a, env));
  }
}
