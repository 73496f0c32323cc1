#include "doctest.h"
#include "mtlkit/formula.hpp"
#include "mtlkit/formula_ops.hpp"
#include "mtlkit/lab.hpp"
#include "mtlkit/syntax.hpp"

using namespace mtlkit;

TEST_CASE("free variables") {
  CHECK(free_vars(parse_msol("E x. a(x)")).fo.empty());
  CHECK(free_vars(parse_msol("E x. a(x)")).so.empty());

  FreeVars fv = free_vars(parse_msol("x in X"));
  CHECK(fv.fo == std::set<std::string>{"x"});
  CHECK(fv.so == std::set<std::string>{"X"});

  FreeVars gv = free_vars(parse_gmc("nu X. <1> Y"));
  CHECK(gv.fo.empty());
  CHECK(gv.so == std::set<std::string>{"Y"});

  // shadowing: the inner binder hides the outer variable
  FreeVars sv = free_vars(parse_msol("E x. (a(x) & E x. b(x))"));
  CHECK(sv.fo.empty());
}

TEST_CASE("one-step grammar membership") {
  VarRoleSets empty;
  auto v1 = check_one_step(parse_gmc("mu X. q | (a & <1> X)"), empty);
  CHECK(v1.kind == OneStepVerdict::Kind::InTheta);

  VarRoleSets zy;
  zy.zero = {"Y"};
  auto v2 = check_one_step(parse_gmc("<1> Y"), zy);
  CHECK(v2.kind == OneStepVerdict::Kind::Reject);

  // the same formula is fine when Y is a one-step variable
  VarRoleSets oy;
  oy.one = {"Y"};
  CHECK(check_one_step(parse_gmc("<1> Y"), oy).kind == OneStepVerdict::Kind::InPhi);

  VarRoleSets oz;
  oz.one = {"Z"};
  auto v3 = check_one_step(parse_gmc("<1> [1] Z"), oz);
  CHECK(v3.kind == OneStepVerdict::Kind::Reject);
  CHECK(!v3.path.empty());

  // the worked example from the one-step fragment definition
  VarRoleSets mixed;
  mixed.zero = {"Y"};
  mixed.one = {"Z"};
  auto v4 = check_one_step(parse_gmc("mu X. (X | Y) | <2> (X | Z & [1] a)"), mixed);
  CHECK(v4.kind == OneStepVerdict::Kind::InTheta);

  VarRoleSets zx;
  zx.zero = {"X"};
  zx.one = {"X"};
  CHECK(check_one_step(parse_gmc("q | <1> X"), zx).kind == OneStepVerdict::Kind::InPhi);

  // positivity is part of membership
  CHECK(check_one_step(parse_gmc("mu X. !X"), empty).kind == OneStepVerdict::Kind::Reject);
}

TEST_CASE("alternation freeness") {
  CHECK(check_alternation_free(parse_gmc("mu X. a | [1] X")));
  CHECK_FALSE(check_alternation_free(parse_gmc("nu X. mu Y. (<2> X) | (<1> Y)")));
  CHECK(check_alternation_free(parse_gmc("tt")));
  // independent blocks do not alternate
  CHECK(check_alternation_free(parse_gmc("mu X. (<1> X | nu Y. (a & [1] Y))")));
  CHECK_THROWS_AS(check_alternation_free(parse_gmc("!(a & b)")), std::invalid_argument);
}

TEST_CASE("positive normal form") {
  CHECK(equal(pnf(parse_gmc("!tt")), parse_gmc("ff")));
  CHECK(equal(pnf(parse_gmc("!!a")), parse_gmc("a")));
  CHECK(equal(pnf(parse_gmc("!(a & <1> !X)")), parse_gmc("!a | [1] X")));
  CHECK(equal(pnf(parse_gmc("!(mu X. a | <1> X)")), parse_gmc("nu X. !a & [1] X")));
  CHECK(is_pnf(pnf(parse_gmc("!(a | (b & <2> (tt | ff)))"))));
  // free variables negate like atoms, bound ones must stay positive
  CHECK(equal(pnf(parse_gmc("!X")), parse_gmc("!X")));
  CHECK(equal(pnf(parse_gmc("!(<2> X)")), parse_gmc("[2] !X")));
  CHECK_THROWS_AS(pnf(parse_gmc("mu X. !X")), std::invalid_argument);
}

TEST_CASE("substitution") {
  CHECK(equal(subst_var(parse_gmc("<1> X"), "X", parse_gmc("!X")), parse_gmc("<1> !X")));
  CHECK(equal(subst_var(parse_gmc("mu X. <1> X"), "X", parse_gmc("a")), parse_gmc("mu X. <1> X")));

  // capture avoidance: X & mu Y. X with X -> Y renames the binder
  GmcPtr subst = subst_var(parse_gmc("X & mu Y. X"), "X", gmc::var("Y"));
  FreeVars fv = free_vars(subst);
  CHECK(fv.so == std::set<std::string>{"Y"});
  REQUIRE(subst->kind == GmcNode::Kind::And);
  CHECK(subst->b->kind == GmcNode::Kind::Mu);
  CHECK(subst->b->name != "Y");
  CHECK(subst->b->a->kind == GmcNode::Kind::Var);
  CHECK(subst->b->a->name == "Y");
}

TEST_CASE("time-zero suppression") {
  GmcPtr f1 = parse_gmc("mu Y. (a | X) & <1> (X | Y)");
  CHECK(equal(suppress(f1, "X", SuppressDir::Down), parse_gmc("mu Y. (a | ff) & <1> (X | Y)")));

  GmcPtr f2 = parse_gmc("X & mu X. (a | X) & [2] X");
  CHECK(equal(suppress(f2, "X", SuppressDir::Up), parse_gmc("tt & mu X. (a | X) & [2] X")));

  CHECK(equal(suppress(parse_gmc("a"), "X", SuppressDir::Down), parse_gmc("a")));
}

TEST_CASE("least fixpoint merging") {
  auto [y1, b1] = merge_lfps(parse_gmc("mu X1. mu X2. (X1 | <1> X2)"));
  CHECK(equal(b1, gmc::or_(gmc::var(y1), gmc::diamond(1, gmc::var(y1)))));

  auto [y2, b2] = merge_lfps(parse_gmc("mu X. a"));
  CHECK(equal(b2, parse_gmc("a")));
  (void)y2;

  auto [y3, b3] = merge_lfps(parse_gmc("mu X. <1> X"));
  CHECK(equal(b3, gmc::diamond(1, gmc::var(y3))));

  CHECK_THROWS_AS(merge_lfps(parse_gmc("nu X. <1> X")), std::invalid_argument);
}

TEST_CASE("counting-CTL* size with unary grades") {
  CHECK(cctl_size(parse_cctl("D{2} a")) == 4);
  CHECK(cctl_size(parse_cctl("a")) == 1);
  CHECK(cctl_size(parse_cctl("a & b")) == 3);
  CHECK(cctl_size(parse_cctl("E (a U b)")) == 4);
  CHECK(cctl_size(parse_cctl("A (X a)")) == 3);
}

TEST_CASE("balancedness") {
  CHECK(is_balanced(parse_cctl("E (a U b)")) == false);  // E body not a conjunction
  CHECK(is_balanced(cctl::until(cctl::embed(cctl::atom("a")), cctl::embed(cctl::atom("b")))));
  CHECK_FALSE(is_balanced(parse_cctl("E ((a & b) U q & tt)")));

  // balance pads the smaller side and preserves balancedness
  CctlStatePtr f1 = balance(parse_cctl("E ((a & b) U q)"));
  CHECK(is_balanced(f1));
  CctlStatePtr f2 = balance(parse_cctl("E a"));
  CHECK(is_balanced(f2));
  // odd size gap needs the even-size tautology conjunct
  CctlStatePtr f3 = balance(parse_cctl("E (a U !a)"));
  CHECK(is_balanced(f3));
  CctlStatePtr f4 = balance(parse_cctl("A ((X a) U (D{2} tt))"));
  CHECK(is_balanced(f4));
}

TEST_CASE("desugaring is idempotent") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    MsolPtr f = gen_msol(4, rng, {"a", "b"});
    MsolPtr once = desugar(f);
    CHECK(equal(desugar(once), once));
  }
}

TEST_CASE("fresh pool never reuses names") {
  FreshVarPool pool({"x", "x1"});
  CHECK(pool.fresh("x") == "x2");
  CHECK(pool.fresh("x") == "x3");
  CHECK(pool.fresh("y") == "y");
  CHECK(pool.fresh("y") == "y1");
}
