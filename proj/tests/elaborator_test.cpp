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

}  // namespace

TEST_CASE("elaborate_library over the base file") {
  const LibraryEnv& env = tu::base_env();
  CHECK(env.theories.size() == 17);
  CHECK(env.arrows.size() == 19);  // 11 extensions, 2 renames, 3x2 combine legs

  SECTION("a single empty definition") {
    LibraryEnv one = tu::elaborate_text("Empty := Theory {}");
    CHECK(one.theories.size() == 1);
    CHECK(one.arrows.empty());
  }
  SECTION("macro axioms are stored expanded") {
    for (const auto& [name, p] : env.theories)
      for (const auto& d : p.decls)
        if (const auto* ax = std::get_if<AxiomDecl>(&d.node))
          CHECK_FALSE(std::holds_alternative<PropertyMacro>(ax->body->node));
  }
}

TEST_CASE("LeftNearSemiring expands to the Figure 1 presentation") {
  TheoryPresentation lns = tu::corpus_env().theory(Name{"LeftNearSemiring"});
  REQUIRE(lns.decls.size() == 10);
  REQUIRE(alpha_equal_as_set(lns, tu::fig1_presentation()));
}

TEST_CASE("eval_extend") {
  SECTION("Empty plus a type gives Carrier") {
    TheoryPresentation empty = tu::theory_of("Empty := Theory {}");
    auto [carrier, arrow] = eval_extend(
        empty, {mk::type_decl(Name{"U"})}, Name{"Carrier"});
    CHECK(carrier.decls.size() == 1);
    CHECK(arrow.source == Name{"Empty"});
    CHECK(arrow.target == Name{"Carrier"});
    CHECK(arrow.renaming.empty());
    CHECK(arrow.provenance == Provenance::Extension);
  }
  SECTION("empty extension is the base with an identity arrow") {
    TheoryPresentation magma = tu::base_env().theory(Name{"Magma"});
    auto [same, arrow] = eval_extend(magma, {}, Name{"Magma2"});
    CHECK(same.decls.size() == magma.decls.size());
    CHECK(arrow.renaming.empty());
  }
  SECTION("macro axiom expands against the base's signature") {
    TheoryPresentation magma = tu::base_env().theory(Name{"Magma"});
    auto [semigroup, arrow] = eval_extend(
        magma,
        {mk::axiom_decl(Name{"associative_*"},
                        mk::macro(Name{"associative"}, {OpName{Name{"*"}}}))},
        Name{"Semigroup"});
    const auto* ax =
        std::get_if<AxiomDecl>(&semigroup.find(Name{"associative_*"})->node);
    REQUIRE(ax != nullptr);
    CHECK(alpha_equal(
        ax->body,
        parse_formula("forall x, y, z : U. (x * y) * z = x * (y * z)")));
  }
  SECTION("duplicate names are rejected") {
    TheoryPresentation carrier = tu::base_env().theory(Name{"Carrier"});
    CHECK(throws_kind(ErrorKind::DuplicateName, [&] {
      eval_extend(carrier, {mk::type_decl(Name{"U"})}, Name{"X"});
    }));
  }
  SECTION("unknown references are rejected") {
    TheoryPresentation carrier = tu::base_env().theory(Name{"Carrier"});
    CHECK(throws_kind(ErrorKind::UnresolvedSymbol, [&] {
      eval_extend(carrier,
                  {mk::op_decl(Name{"f"},
                               mk::fn({mk::sort(Name{"V"})}, mk::sort(Name{"V"})))},
                  Name{"X"});
    }));
  }
}

TEST_CASE("eval_combine") {
  const LibraryEnv& env = tu::corpus_env();

  SECTION("LeftNearSemiringoid contents") {
    TheoryPresentation p = env.theory(Name{"LeftNearSemiringoid"});
    REQUIRE(p.decls.size() == 8);
    std::vector<Name> axioms = tu::axiom_names(p);
    std::set<Name> axiom_set(axioms.begin(), axioms.end());
    REQUIRE(axiom_set == std::set<Name>{Name{"associative_*"},
                                        Name{"associative_+"},
                                        Name{"leftIdentity_+_0"},
                                        Name{"right_Identity_+_0"}});
  }
  SECTION("combine T, T over T collapses to T") {
    LibraryEnv local = tu::elaborate_text(
        "Empty := Theory {}\n"
        "T := Empty extended by { U : type; e : U }\n"
        "TT := combine T, T over T\n");
    REQUIRE(alpha_equal_as_set(local.theory(Name{"TT"}),
                               local.theory(Name{"T"})));
  }
  SECTION("BitList holds the inductive list over the renamed bit sort") {
    TheoryPresentation p = env.theory(Name{"BitList"});
    REQUIRE(p.decls.size() == 2);
    const auto* u = std::get_if<InductiveDecl>(&p.decls[0].node);
    REQUIRE(u != nullptr);
    CHECK(u->name == Name{"U"});
    REQUIRE(u->ctors.size() == 2);
    const auto* list = std::get_if<InductiveDecl>(&p.decls[1].node);
    REQUIRE(list != nullptr);
    CHECK(list->name == Name{"list"});
  }
  SECTION("clashing unshared symbols are an error with a suggestion") {
    LibraryEnv local = tu::elaborate_text(
        "Empty := Theory {}\n"
        "Carrier := Empty extended by { U : type }\n"
        "A := Carrier extended by { e : U }\n"
        "B := Carrier extended by { e : U -> U }\n");
    try {
      eval_combine({Name{"A"}, Name{"B"}}, Name{"Carrier"}, local, Name{"X"});
      FAIL("expected NameClash");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NameClash);
      CHECK(std::string(e.what()).find("|->") != std::string::npos);
    }
  }
  SECTION("same body under different names stays two declarations") {
    TheoryPresentation pus =
        tu::base_env().theory(Name{"PointedUnarySystem"});
    REQUIRE(pus.decls.size() == 3);  // U, prime, e
    CHECK(pus.find(Name{"prime"}) != nullptr);
    CHECK(pus.find(Name{"e"}) != nullptr);
  }
  SECTION("same name with alpha-equal declarations is shared") {
    LibraryEnv local = tu::elaborate_text(
        "Empty := Theory {}\n"
        "Carrier := Empty extended by { U : type }\n"
        "A := Carrier extended by { e : U }\n"
        "B := Carrier extended by { e : U }\n"
        "X := combine A, B over Carrier\n");
    CHECK(local.theory(Name{"X"}).decls.size() == 2);
  }
  SECTION("the first leg's renaming redirects the carried part") {
    // T -> X goes through a rename, so Y's image of the base must be
    // rewritten to X's vocabulary.
    LibraryEnv local = tu::elaborate_text(
        "Empty := Theory {}\n"
        "Carrier := Empty extended by { U : type }\n"
        "X := Carrier [U |-> S]\n"
        "Y := Carrier extended by { e : U }\n");
    auto [z, arrows] =
        eval_combine({Name{"X"}, Name{"Y"}}, Name{"Carrier"}, local, Name{"Z"});
    REQUIRE(z.decls.size() == 2);
    CHECK(decl_name(z.decls[0]) == Name{"S"});
    const auto* e = std::get_if<OpDecl>(&z.decls[1].node);
    REQUIRE(e != nullptr);
    CHECK(alpha_equal(e->type, mk::sort(Name{"S"})));
    REQUIRE(arrows.size() == 2);
    CHECK(arrows[0].renaming.empty());
    CHECK(arrows[1].renaming == Renaming::of({{"U", "S"}}));
    local.add_theory(z, TheoryOrigin::Combine);
    for (const auto& a : arrows) REQUIRE_NOTHROW(validate_arrow(a, local));
  }
  SECTION("no morphism from the shared base is an error") {
    LibraryEnv local = tu::elaborate_text(
        "Empty := Theory {}\n"
        "Carrier := Empty extended by { U : type }\n"
        "Other := Empty extended by { W : type }\n"
        "A := Carrier extended by { e : U }\n");
    CHECK(throws_kind(ErrorKind::NoMorphism, [&] {
      eval_combine({Name{"A"}, Name{"Carrier"}}, Name{"Other"}, local,
                   Name{"X"});
    }));
  }
}

TEST_CASE("eval_instance") {
  const LibraryEnv& env = tu::corpus_env();

  SECTION("BitCarrier from Bit_Base") {
    auto [pres, arrow, obligations] =
        eval_instance(env.theory(Name{"Bit_Base"}), env.theory(Name{"Carrier"}),
                      Renaming::of({{"bit", "U"}}), Name{"BitCarrier"});
    REQUIRE(pres.decls.size() == 1);
    const auto* ind = std::get_if<InductiveDecl>(&pres.decls[0].node);
    REQUIRE(ind != nullptr);
    CHECK(ind->name == Name{"U"});
    CHECK(arrow.source == Name{"Carrier"});
    CHECK(arrow.target == Name{"BitCarrier"});
    CHECK(arrow.provenance == Provenance::Instance);
    CHECK(obligations.empty());
  }
  SECTION("instance over Empty changes nothing") {
    auto [pres, arrow, obligations] =
        eval_instance(env.theory(Name{"Semigroup"}), env.theory(Name{"Empty"}),
                      Renaming{}, Name{"X"});
    CHECK(alpha_equal_as_set(pres, env.theory(Name{"Semigroup"})));
    CHECK(arrow.source == Name{"Empty"});
    CHECK(obligations.empty());
  }
  SECTION("missing base signature symbol breaks the arrow") {
    CHECK(throws_kind(ErrorKind::BrokenArrow, [&] {
      eval_instance(env.theory(Name{"Bit_Base"}),
                    env.theory(Name{"PointedCarrier"}),
                    Renaming::of({{"bit", "U"}}), Name{"X"});
    }));
  }
  SECTION("base axioms become obligations") {
    LibraryEnv local = tu::elaborate_text(
        "Empty := Theory {}\n"
        "Pointed := Empty extended by { U : type; e : U;"
        "  axiom self := forall x : U. x = x }\n"
        "Concrete := Empty extended by { Inductive b | z : b }\n");
    auto [pres, arrow, obligations] =
        eval_instance(local.theory(Name{"Concrete"}),
                      local.theory(Name{"Pointed"}),
                      Renaming::of({{"b", "U"}, {"z", "e"}}), Name{"Inst"});
    REQUIRE(obligations.size() == 1);
    CHECK(obligations[0].axiom == Name{"self"});
    CHECK(obligations[0].source == Name{"Pointed"});
  }
  SECTION("via must map source names to base names") {
    CHECK(throws_kind(ErrorKind::InvalidRenaming, [&] {
      eval_instance(env.theory(Name{"Bit_Base"}), env.theory(Name{"Carrier"}),
                    Renaming::of({{"nonexistent", "U"}}), Name{"X"});
    }));
  }
}

TEST_CASE("infer_arrow") {
  const LibraryEnv& env = tu::corpus_env();

  SECTION("identity along the construction chain") {
    Arrow a = infer_arrow(Name{"Carrier"}, Name{"Semigroup"}, env);
    CHECK(a.renaming.empty());
  }
  SECTION("a theory reaches itself") {
    Arrow a = infer_arrow(Name{"Semigroup"}, Name{"Semigroup"}, env);
    CHECK(a.renaming.empty());
  }
  SECTION("renaming arrows compose into the path") {
    Arrow a = infer_arrow(Name{"Carrier"}, Name{"CarrierS"}, env);
    CHECK(a.renaming == Renaming::of({{"U", "S"}}));
  }
  SECTION("two different embeddings are ambiguous") {
    CHECK(throws_kind(ErrorKind::AmbiguousMorphism, [&] {
      infer_arrow(Name{"Carrier"}, Name{"MultiCarrier"}, env);
    }));
  }
  SECTION("no path and no inclusion is an error") {
    CHECK(throws_kind(ErrorKind::NoMorphism, [&] {
      infer_arrow(Name{"Semigroup"}, Name{"Carrier"}, env);
    }));
  }
  SECTION("identity inclusion works without a recorded path") {
    LibraryEnv local = tu::elaborate_text(
        "A := Theory { U : type }\n"
        "B := Theory { U : type; e : U }\n");
    Arrow a = infer_arrow(Name{"A"}, Name{"B"}, local);
    CHECK(a.renaming.empty());
  }
}

TEST_CASE("expand_property_macro") {
  PropertyMacroTable table = PropertyMacroTable::builtins();
  TheoryPresentation lns = tu::corpus_env().theory(Name{"LeftNearSemiring"});
  SignatureLookup sig = signature_lookup_for(lns);
  std::set<Name> avoid = symbols_of(lns);

  auto expand = [&](const std::string& name, std::vector<OpName> args) {
    return table.expand(PropertyMacro{Name{name}, std::move(args)}, sig, avoid);
  };

  SECTION("associative") {
    CHECK(alpha_equal(
        expand("associative", {OpName{Name{"*"}}}),
        parse_formula("forall x, y, z : U. (x * y) * z = x * (y * z)")));
  }
  SECTION("leftAnnihilative") {
    CHECK(alpha_equal(expand("leftAnnihilative",
                             {OpName{Name{"*"}}, OpName{Name{"0"}}}),
                      parse_formula("forall x : U. 0 * x = 0")));
  }
  SECTION("leftDistributive") {
    CHECK(alpha_equal(
        expand("leftDistributive", {OpName{Name{"*"}}, OpName{Name{"+"}}}),
        parse_formula(
            "forall x, y, z : U. x * (y + z) = (x * y) + (x * z)")));
  }
  SECTION("unknown macro") {
    CHECK(throws_kind(ErrorKind::UnknownMacro,
                      [&] { expand("frobnicates", {OpName{Name{"*"}}}); }));
  }
  SECTION("arity mismatch") {
    CHECK(throws_kind(ErrorKind::ArityMismatch,
                      [&] { expand("associative", {}); }));
  }
  SECTION("non-operation argument") {
    CHECK(throws_kind(ErrorKind::NonOperationArgument, [&] {
      expand("associative", {OpName{Name{"missing_op"}}});
    }));
  }
  SECTION("builtin table covers the corpus macros") {
    for (const char* name :
         {"associative", "commutative", "idempotent", "leftIdentity",
          "rightIdentity", "leftDistributive", "rightDistributive",
          "leftAnnihilative", "rightAnnihilative", "involutive",
          "antiCommutative"})
      CHECK(table.contains(Name{name}));
  }
}

TEST_CASE("template macros load from a table file") {
  PropertyMacroTable table = PropertyMacroTable::builtins();
  table.load_templates(
      "% extra schemas\n"
      "medial/1 := forall x, y, z, w : $S1."
      " $1($1(x, y), $1(z, w)) = $1($1(x, z), $1(y, w))\n");
  REQUIRE(table.contains(Name{"medial"}));

  SourceFile file = parse_library(
      "Magma := Theory { U : type; * : (U, U) -> U;"
      " axiom medial_* : medial((*)) }");
  LibraryEnv env = elaborate_library(file, table);
  const auto* ax = std::get_if<AxiomDecl>(
      &env.theory(Name{"Magma"}).find(Name{"medial_*"})->node);
  REQUIRE(ax != nullptr);
  CHECK(alpha_equal(ax->body,
                    parse_formula("forall x, y, z, w : U."
                                  " (x * y) * (z * w) = (x * z) * (y * w)")));
}

TEST_CASE("elaboration errors carry the definition name") {
  try {
    tu::elaborate_text(
        "Empty := Theory {}\n"
        "Bad := Empty extended by { f : V -> V }\n");
    FAIL("expected UnresolvedSymbol");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnresolvedSymbol);
    CHECK(std::string(e.what()).find("'Bad'") != std::string::npos);
  }
}
