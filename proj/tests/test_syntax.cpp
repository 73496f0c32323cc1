#include <random>

#include "doctest.h"
#include "mtlkit/formula.hpp"
#include "mtlkit/formula_ops.hpp"
#include "mtlkit/lab.hpp"
#include "mtlkit/syntax.hpp"
#include "mtlkit/translate.hpp"

using namespace mtlkit;

TEST_CASE("parsing the reference formulas") {
  MsolPtr m = parse_msol("ET X. E x. x in X");
  REQUIRE(m->kind == MsolNode::Kind::Exists2);
  CHECK(m->qkind == QuantKind::Tree);
  CHECK(m->v2 == "X");
  REQUIRE(m->a->kind == MsolNode::Kind::Exists1);
  CHECK(m->a->a->kind == MsolNode::Kind::Member);

  CHECK(equal(parse_gmc("nu X. mu Y. (<2> X) | (<1> Y)"), stdlib_phi_den_gmc()));

  CctlStatePtr c = parse_cctl("E (a U q)");
  REQUIRE(c->kind == CctlState::Kind::Exists);
  REQUIRE(c->p->kind == CctlPath::Kind::Until);
  CHECK(c->p->a->s->ap == "a");
  CHECK(c->p->b->s->ap == "q");
}

TEST_CASE("sugar expands at parse time") {
  // x < y and x = y over <=
  CHECK(equal(parse_msol("x < y"), msol::lt("x", "y")));
  CHECK(equal(parse_msol("x = y"), msol::eq("x", "y")));
  // F is tt U, ff is !tt outside the mu-calculus
  CHECK(equal(parse_cctl("E (F a)"), parse_cctl("E (tt U a)")));
  CHECK(equal(parse_cctl("ff"), cctl::not_(cctl::tt())));
  // in the mu-calculus ff is a literal and -> desugars
  CHECK(parse_gmc("ff")->kind == GmcNode::Kind::False);
  CHECK(equal(parse_gmc("a -> b"), parse_gmc("!a | b")));
}

TEST_CASE("printing reference shapes") {
  CHECK(print(parse_gmc("a")) == "a");
  CHECK(print(gmc::diamond(2, gmc::var("X"))) == "<2> X");
  CHECK(print(parse_msol("x in X")) == "x in X");
  CHECK(print(parse_cctl("E (a U q)")) == "E (a U q)");
}

TEST_CASE("uppercase identifiers are fixpoint variables") {
  CHECK(parse_gmc("X")->kind == GmcNode::Kind::Var);
  CHECK(parse_gmc("x")->kind == GmcNode::Kind::Atom);
  CHECK(parse_gmc("Xab")->kind == GmcNode::Kind::Var);
}

TEST_CASE("round trip on generated formulas") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 150; ++i) {
    MsolPtr f = gen_msol(6, rng, {"a", "b"});
    CHECK(equal(parse_msol(print(f)), f));
  }
  for (int i = 0; i < 150; ++i) {
    GmcPtr f = gen_gmc(6, rng, {"a", "q"});
    CHECK(equal(parse_gmc(print(f)), f));
  }
  for (int i = 0; i < 150; ++i) {
    CctlStatePtr f = gen_cctl(6, rng, {"a", "q"});
    CHECK(equal(parse_cctl(print(f)), f));
  }
  for (int i = 0; i < 150; ++i) {
    StlStatePtr f = gen_stl(6, rng, {"a", "b"});
    CHECK(equal(parse_stl(print(f)), f));
  }
}

TEST_CASE("round trip on the translator outputs") {
  TranslationOutput tr = osgmc_to_mtl(stdlib_phi_den_gmc(), "x");
  CHECK(equal(parse_msol(print(tr.formula)), tr.formula));
  TranslationOutput tw = osafgmc_to_wmtl(stdlib_af_a_gmc(), "x");
  CHECK(equal(parse_msol(print(tw.formula)), tw.formula));
  CHECK(equal(parse_msol(print(stdlib_a_acceptance_wmtl())), stdlib_a_acceptance_wmtl()));
  CHECK(equal(parse_msol(print(stdlib_theta_cow("x", "X"))), stdlib_theta_cow("x", "X")));
}

TEST_CASE("errors carry spans inside the input") {
  std::mt19937_64 rng(11);
  std::vector<std::string> corpus;
  for (int i = 0; i < 30; ++i) corpus.push_back(print(gen_msol(4, rng, {"a"})));
  for (const auto& base : corpus) {
    // mutate: drop a random chunk and append garbage
    std::string bad = base.substr(0, rng() % base.size()) + " $$";
    try {
      parse_msol(bad);
    } catch (const ParseError& e) {
      CHECK(e.span.begin >= 0);
      CHECK(e.span.begin <= static_cast<int>(bad.size()));
      continue;
    } catch (...) {
      FAIL("expected ParseError");
    }
  }
  CHECK_THROWS_AS(parse_gmc("mu X."), ParseError);
  CHECK_THROWS_AS(parse_cctl("E (a U"), ParseError);
  CHECK_THROWS_AS(parse_msol("a(x) &"), ParseError);
  CHECK_THROWS_AS(parse_msol("a(x) b(x)"), ParseError);
}

TEST_CASE("corpus files") {
  auto fs = parse_corpus("# comment\n\nE x. a(x)\nx in X # inline\n", LogicTag::Msol);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].msol->kind == MsolNode::Kind::Exists1);
  CHECK(fs[1].msol->kind == MsolNode::Kind::Member);
}

TEST_CASE("parse-print-parse reaches a fixpoint after one round") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    StlStatePtr f = gen_stl(5, rng, {"a"});
    std::string s1 = print(f);
    std::string s2 = print(parse_stl(s1));
    CHECK(s1 == s2);
  }
}
