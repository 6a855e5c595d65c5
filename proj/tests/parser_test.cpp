#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace theoria;

namespace {

// Structural equality of parsed definitions, used for round-trip checks.
bool texpr_equal(const TheoryExpr& a, const TheoryExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  auto decls_equal = [](const std::vector<Declaration>& x,
                        const std::vector<Declaration>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (!alpha_equal(x[i], y[i])) return false;
    return true;
  };
  if (const auto* l = std::get_if<TheoryExpr::Literal>(&a.node))
    return decls_equal(l->decls, std::get<TheoryExpr::Literal>(b.node).decls);
  if (const auto* e = std::get_if<TheoryExpr::ExtendedBy>(&a.node)) {
    const auto& eb = std::get<TheoryExpr::ExtendedBy>(b.node);
    return e->base == eb.base && decls_equal(e->decls, eb.decls);
  }
  if (const auto* r = std::get_if<TheoryExpr::RenameOf>(&a.node)) {
    const auto& rb = std::get<TheoryExpr::RenameOf>(b.node);
    return r->base == rb.base && r->renaming == rb.renaming;
  }
  if (const auto* c = std::get_if<TheoryExpr::CombineOver>(&a.node)) {
    const auto& cb = std::get<TheoryExpr::CombineOver>(b.node);
    return c->parts == cb.parts && c->over == cb.over;
  }
  if (const auto* i = std::get_if<TheoryExpr::InstanceOf>(&a.node)) {
    const auto& ib = std::get<TheoryExpr::InstanceOf>(b.node);
    return i->source == ib.source && i->base == ib.base && i->via == ib.via;
  }
  const auto& g = std::get<TheoryExpr::GeneratorCall>(a.node);
  const auto& gb = std::get<TheoryExpr::GeneratorCall>(b.node);
  return g.kind == gb.kind && g.arg == gb.arg;
}

}  // namespace

TEST_CASE("tokenize basics") {
  SECTION("a definition line") {
    auto toks = tokenize("Empty := Theory {}");
    REQUIRE(toks.size() == 6);  // includes End
    CHECK(toks[0].is(Tok::Ident, "Empty"));
    CHECK(toks[1].is(Tok::Assign));
    CHECK(toks[2].is_keyword("Theory"));
    CHECK(toks[3].is(Tok::LBrace));
    CHECK(toks[4].is(Tok::RBrace));
    CHECK(toks[5].is(Tok::End));
  }
  SECTION("empty input") {
    auto toks = tokenize("");
    REQUIRE(toks.size() == 1);
    CHECK(toks[0].is(Tok::End));
  }
  SECTION("qualified operator") {
    auto toks = tokenize("x A.* y");
    REQUIRE(toks.size() == 6);
    CHECK(toks[0].is(Tok::Ident, "x"));
    CHECK(toks[1].is(Tok::Ident, "A"));
    CHECK(toks[2].is(Tok::Dot));
    CHECK(toks[3].is(Tok::Op, "*"));
    CHECK(toks[4].is(Tok::Ident, "y"));
  }
  SECTION("composite identifiers glue operator runs after underscores") {
    auto toks = tokenize("axiom leftIdentity_+_0 := left0");
    CHECK(toks[1].is(Tok::Ident, "leftIdentity_+_0"));
    CHECK(toks[3].is(Tok::Ident, "left0"));
  }
  SECTION("primed operators and identifiers are single names") {
    auto toks = tokenize("+' e2 x'");
    CHECK(toks[0].is(Tok::Op, "+'"));
    CHECK(toks[1].is(Tok::Ident, "e2"));
    CHECK(toks[2].is(Tok::Ident, "x'"));
  }
  SECTION("positions and lex errors") {
    try {
      tokenize("U :\n  @");
      FAIL("expected LexError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Lex);
      CHECK(e.pos().line == 2);
      CHECK(e.pos().col == 3);
    }
  }
  SECTION("comments run to end of line") {
    auto toks = tokenize("U % trailing words :=\nV");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].is(Tok::Ident, "U"));
    CHECK(toks[1].is(Tok::Ident, "V"));
  }
}

TEST_CASE("tokenizer totality over prefixes of a valid file") {
  std::string text = read_file(tu::corpus_dir() + "/base.msl");
  for (size_t n = 0; n <= text.size(); ++n)
    REQUIRE_NOTHROW(tokenize(text.substr(0, n)));
}

TEST_CASE("parse_library on the base corpus file") {
  SourceFile file = parse_library(read_file(tu::corpus_dir() + "/base.msl"));
  REQUIRE(file.definitions.size() == 17);
  CHECK(file.definitions.front().name == Name{"Empty"});
  CHECK(std::holds_alternative<TheoryExpr::Literal>(
      file.definitions.front().expr.node));
  CHECK(file.definitions.back().name == Name{"Semigroup"});
  CHECK(std::holds_alternative<TheoryExpr::ExtendedBy>(
      file.definitions.back().expr.node));
}

TEST_CASE("paper listings parse verbatim") {
  SECTION("figure 2") {
    SourceFile file = parse_library(tu::fig2_text());
    REQUIRE(file.definitions.size() == 14);
  }
  SECTION("figure 1") {
    SourceFile file = parse_library(tu::fig1_text());
    REQUIRE(file.definitions.size() == 1);
  }
  SECTION("ring and field combinators") {
    std::set<Name> ext{Name{"Rng"}, Name{"SemiRing"}, Name{"Semirng"},
                       Name{"DivisionRing"}, Name{"CommutativeRing"}};
    SourceFile file = parse_library(
        "Ring := combine Rng, SemiRing over Semirng\n"
        "Field := combine DivisionRing, CommutativeRing over Ring\n",
        ext);
    REQUIRE(file.definitions.size() == 2);
    const auto& ring =
        std::get<TheoryExpr::CombineOver>(file.definitions[0].expr.node);
    CHECK(ring.parts == std::vector<Name>{Name{"Rng"}, Name{"SemiRing"}});
    CHECK(ring.over == Name{"Semirng"});
  }
  SECTION("left near semiring definitions") {
    std::set<Name> ext{Name{"Semigroup"}, Name{"AdditiveMonoid"},
                       Name{"Carrier"}};
    SourceFile file = parse_library(
        "LeftNearSemiringoid := combine Semigroup, AdditiveMonoid\n"
        "                         over Carrier\n"
        "LeftNearSemiring := LeftNearSemiringoid extended by {\n"
        "  axiom leftDistributive_*_+ : leftDistributive((*),(+));\n"
        "  axiom left0 : leftAnnihilative((*),0)\n"
        "}\n",
        ext);
    REQUIRE(file.definitions.size() == 2);
  }
  SECTION("bit theories") {
    SourceFile file = parse_library(
        "Empty := Theory {}\n"
        "Bit_Base := Empty extended by {\n"
        "  Inductive bit\n"
        "    | 0:bit\n"
        "    | 1:bit\n"
        "}\n"
        "Bit_Base_Abstract := Empty extended by {\n"
        "  bit : type\n"
        "  1 : bit\n"
        "  0 : bit\n"
        "  axiom: forall b:bit. b = 1 or b = 0\n"
        "  axiom: not(1=0)\n"
        "}\n"
        "Bit_And := Bit_Base extended by {\n"
        "  bit_and : (bit, bit) -> bit;\n"
        "  bit_and(x,y) = case x of {\n"
        "    | 0 -> 0\n"
        "    | 1 -> y\n"
        "  }\n"
        "}\n");
    REQUIRE(file.definitions.size() == 4);  // Empty plus the three listings
    const auto& abs =
        std::get<TheoryExpr::ExtendedBy>(file.definitions[2].expr.node);
    REQUIRE(abs.decls.size() == 5);
    CHECK(decl_name(abs.decls[3]) == Name{"anon_axiom_1"});
    CHECK(decl_name(abs.decls[4]) == Name{"anon_axiom_2"});
    const auto& band =
        std::get<TheoryExpr::ExtendedBy>(file.definitions[3].expr.node);
    REQUIRE(band.decls.size() == 1);  // signature and clause merge
    CHECK(std::holds_alternative<DefDecl>(band.decls[0].node));
  }
  SECTION("the six-way bit combine") {
    std::set<Name> ext{Name{"Bit_And"}, Name{"Bit_Or"}, Name{"Bit_Not"},
                       Name{"Bit_Implies"}, Name{"Bit_Xor"}, Name{"Bit_Xnor"},
                       Name{"Bit_Base"}};
    SourceFile file = parse_library(
        "Bit := combine Bit_And, Bit_Or, Bit_Not,\n"
        "               Bit_Implies, Bit_Xor, Bit_Xnor over Bit_Base\n",
        ext);
    const auto& bit =
        std::get<TheoryExpr::CombineOver>(file.definitions[0].expr.node);
    REQUIRE(bit.parts.size() == 6);
    CHECK(bit.over == Name{"Bit_Base"});
  }
  SECTION("list and the bit instance") {
    std::set<Name> ext{Name{"Carrier"}, Name{"Bit_Base"}};
    SourceFile file = parse_library(
        "List := Carrier extended by {\n"
        "  Inductive list\n"
        "    nil : list\n"
        "    cons : U -> list -> list;\n"
        "}\n"
        "BitCarrier := instance Bit_Base of Carrier via [ bit |-> U ]\n"
        "BitList := combine List, BitCarrier over Carrier\n",
        ext);
    REQUIRE(file.definitions.size() == 3);
    const auto& list =
        std::get<TheoryExpr::ExtendedBy>(file.definitions[0].expr.node);
    const auto* ind = std::get_if<InductiveDecl>(&list.decls[0].node);
    REQUIRE(ind != nullptr);
    REQUIRE(ind->ctors.size() == 2);
    CHECK(ind->ctors[0].name == Name{"nil"});
    CHECK(ind->ctors[1].name == Name{"cons"});
  }
  SECTION("generator calls at top level") {
    std::set<Name> ext{Name{"Semigroup"}, Name{"Monoid"}};
    SourceFile file = parse_library(
        "SemigroupH := Homomorphism(Semigroup)\n"
        "SubSemigroup := Substructure(Semigroup)\n"
        "MTerm := &Monoid\n"
        "SemigroupModel := TypeFrom(Semigroup)\n",
        ext);
    REQUIRE(file.definitions.size() == 4);
    CHECK(std::get<TheoryExpr::GeneratorCall>(file.definitions[2].expr.node)
              .kind == GenKind::TermAlgebra);
  }
}

TEST_CASE("parse errors") {
  SECTION("forward reference") {
    try {
      parse_library("X := Y extended by {}");
      FAIL("expected ForwardReference");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ForwardReference);
      CHECK(std::string(e.what()).find("Y") != std::string::npos);
    }
  }
  SECTION("duplicate definition") {
    REQUIRE_THROWS_AS(parse_library("X := Theory {}\nX := Theory {}"), Error);
  }
  SECTION("expected token set in the message") {
    try {
      parse_library("X := Theory { U : }");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
  }
  SECTION("combine requires two parts") {
    REQUIRE_THROWS_AS(
        parse_library("A := Theory {}\nB := combine A over A"), Error);
  }
}

TEST_CASE("parse_formula") {
  SECTION("quantified equation") {
    FormulaPtr f = parse_formula("forall x : U. x + 0 = x");
    const auto* fa = std::get_if<Forall>(&f->node);
    REQUIRE(fa != nullptr);
    REQUIRE(fa->binders.size() == 1);
    CHECK(fa->binders[0].var == Name{"x"});
    const auto* eq = std::get_if<Equal>(&fa->body->node);
    REQUIRE(eq != nullptr);
    const auto* plus = std::get_if<Apply>(&eq->lhs->node);
    REQUIRE(plus != nullptr);
    CHECK(plus->op.name == Name{"+"});
  }
  SECTION("negation") {
    FormulaPtr f = parse_formula("not(1=0)");
    const auto* n = std::get_if<Not>(&f->node);
    REQUIRE(n != nullptr);
    CHECK(std::holds_alternative<Equal>(n->body->node));
  }
  SECTION("operator sections become property macros") {
    FormulaPtr f = parse_formula("associative((*))");
    const auto* m = std::get_if<PropertyMacro>(&f->node);
    REQUIRE(m != nullptr);
    CHECK(m->name == Name{"associative"});
    REQUIRE(m->args.size() == 1);
    CHECK(m->args[0].name == Name{"*"});
  }
  SECTION("precedence: implies binds loosest, quantifier extends right") {
    FormulaPtr f =
        parse_formula("forall x : U. x = 0 or x = 1 implies x = x");
    const auto* fa = std::get_if<Forall>(&f->node);
    REQUIRE(fa != nullptr);
    CHECK(std::holds_alternative<Implies>(fa->body->node));
  }
  SECTION("qualified infix in generated style") {
    FormulaPtr f =
        parse_formula("forall x, y:A.U . f(x A.* y) = f(x) B.* f(y)");
    const auto* fa = std::get_if<Forall>(&f->node);
    REQUIRE(fa != nullptr);
    REQUIRE(fa->binders.size() == 2);
    CHECK(std::holds_alternative<FieldTypeRef>(fa->binders[0].type->node));
  }
}

TEST_CASE("pretty_print") {
  SECTION("empty theory") {
    TheoryPresentation empty = tu::theory_of("Empty := Theory {}");
    CHECK(pretty_print(empty) == "Empty := Theory {}");
  }
  SECTION("Magma, elaborated from the base file") {
    TheoryPresentation magma = tu::base_env().theory(Name{"Magma"});
    std::string printed = pretty_print(magma);
    CHECK(printed ==
          "Magma := Theory {\n  U : type;\n  * : (U, U) -> U\n}");
  }
  SECTION("expanded LeftNearSemiring reparses to the Figure 1 set") {
    TheoryPresentation lns = tu::corpus_env().theory(Name{"LeftNearSemiring"});
    TheoryPresentation reparsed = tu::theory_of(pretty_print(lns));
    REQUIRE(alpha_equal_as_set(reparsed, tu::fig1_presentation()));
  }
}

TEST_CASE("parse then print then parse is stable over the corpus") {
  std::set<Name> known;
  for (const auto& path : tu::corpus_files()) {
    SourceFile first = parse_library(read_file(path), known);
    SourceFile second = parse_library(pretty_print(first), known);
    REQUIRE(second.definitions.size() == first.definitions.size());
    for (size_t i = 0; i < first.definitions.size(); ++i) {
      CHECK(first.definitions[i].name == second.definitions[i].name);
      CHECK(texpr_equal(first.definitions[i].expr, second.definitions[i].expr));
    }
    for (const auto& def : first.definitions) known.insert(def.name);
  }
}
