#include "doctest.h"
#include "mtlkit/formula_ops.hpp"
#include "mtlkit/lab.hpp"
#include "mtlkit/syntax.hpp"
#include "mtlkit/translate.hpp"

using namespace mtlkit;

TEST_CASE("corpus enumeration is deterministic and exhaustive") {
  Corpus c;
  c.max_nodes = 3;
  c.ap = {"a"};
  CHECK(c.count() == 2 + 4 + 16);  // shapes times labelings per size
  std::vector<std::string> first, second;
  c.for_each([&](const TreeModel& t, uint64_t) {
    first.push_back(tree_to_json(t));
    return true;
  });
  c.for_each([&](const TreeModel& t, uint64_t) {
    second.push_back(tree_to_json(t));
    return true;
  });
  CHECK(first == second);
  CHECK(first.size() == c.count());
}

TEST_CASE("equivalence checks pass and fail as expected") {
  Corpus c;
  c.max_nodes = 4;
  c.ap = {"a", "q"};

  EvalBinding lhs = bind_cctl(parse_cctl("E (a U q)"));
  EvalBinding rhs = bind_gmc(parse_gmc("mu X. q | (a & <1> X)"));
  EquivReport rep = equiv_check(lhs, rhs, c);
  CHECK(rep.status == EquivReport::Status::Pass);
  CHECK(rep.models == c.count());

  // a vs b must fail with a re-checkable counterexample
  EvalBinding la = bind_gmc(parse_gmc("a"));
  EvalBinding lb = bind_gmc(parse_gmc("q"));
  EquivReport bad = equiv_check(la, lb, c);
  REQUIRE(bad.status == EquivReport::Status::Fail);
  REQUIRE(bad.counterexample.has_value());
  TreeModel wit = tree_from_json(bad.counterexample->model_json);
  DenSet dl = la.denot(wit);
  DenSet dr = lb.denot(wit);
  CHECK(dl != dr);
  CHECK(dl.test(bad.counterexample->node) != dr.test(bad.counterexample->node));

  // parallel execution finds the same first counterexample
  EquivReport bad2 = equiv_check(la, lb, c, /*jobs=*/2);
  REQUIRE(bad2.counterexample.has_value());
  CHECK(bad2.counterexample->model_id == bad.counterexample->model_id);
}

TEST_CASE("translated density formula is an equivalence instance") {
  Corpus c;
  c.max_nodes = 4;
  c.ap = {"a"};
  TranslationOutput tr = osgmc_to_mtl(stdlib_phi_den_gmc(), "x");
  EquivReport rep =
      equiv_check(bind_gmc(stdlib_phi_den_gmc()), bind_msol_denot(tr.formula, "x", {}), c);
  CHECK(rep.status == EquivReport::Status::Pass);
}

TEST_CASE("lemma suites hold on small corpora") {
  Corpus c;
  c.max_nodes = 4;
  c.ap = {"a"};
  for (LemmaSuiteName name :
       {LemmaSuiteName::Monotonicity, LemmaSuiteName::Independence, LemmaSuiteName::Shannon,
        LemmaSuiteName::SuppressionOrder, LemmaSuiteName::FiniteWitness,
        LemmaSuiteName::GradedDuality, LemmaSuiteName::ModeCoherence}) {
    EquivReport rep = lemma_suite(name, c, 40, 7);
    INFO(lemma_suite_name(name));
    CHECK(rep.status == EquivReport::Status::Pass);
    CHECK(rep.models >= 40);
  }
}

TEST_CASE("lemma suites are deterministic") {
  Corpus c;
  c.max_nodes = 3;
  c.ap = {"a"};
  EquivReport r1 = lemma_suite(LemmaSuiteName::Shannon, c, 25, 123);
  EquivReport r2 = lemma_suite(LemmaSuiteName::Shannon, c, 25, 123);
  r1.elapsed_ms = r2.elapsed_ms = 0;
  CHECK(r1.to_json() == r2.to_json());
}

TEST_CASE("formula generators stay inside their grammars") {
  std::mt19937_64 rng(99);
  VarRoleSets roles;
  roles.zero = {"Z", "B"};
  roles.one = {"O", "B"};
  for (int i = 0; i < 200; ++i) {
    CHECK(check_one_step(gen_phi(roles, 3, rng, {"a"}), roles).accepted());
    CHECK(check_one_step(gen_theta(roles, 3, rng, {"a"}), roles).accepted());
  }
}

TEST_CASE("cctl enumeration is size-ordered and complete at small sizes") {
  auto states = enum_cctl_states(2, {"a"}, 2);
  // size 1: tt, a; size 2: negations, E/A of one-node paths, D{0} forms
  REQUIRE(states.size() == 10);
  CHECK(cctl_size(states[0]) == 1);
  CHECK(cctl_size(states.back()) == 2);
  uint64_t last = 0;
  for (const auto& f : states) {
    CHECK(cctl_size(f) >= last);
    last = cctl_size(f);
  }
  auto paths = enum_cctl_paths(3, {"a"}, 1);
  bool has_until = false;
  for (const auto& p : paths)
    if (p->kind == CctlPath::Kind::Until) has_until = true;
  CHECK(has_until);
}

TEST_CASE("indistinguishability experiment") {
  // D{4} tt, the distinguisher for n = 2, has unary size 6
  IndistResult res = indist_experiment(2, 3, 6);
  CHECK(res.report.status == EquivReport::Status::ApproxReport);
  CHECK(res.disagreements_below_n == 0);
  CHECK(!res.rows.empty());
  bool some = false;
  for (const auto& row : res.rows)
    if (row.on_d != row.on_nd && row.size >= 6) some = true;
  CHECK(some);
}

TEST_CASE("h-compatibility experiment") {
  EquivReport rep = hcompat_experiment(3, 6, 2, 2, 20, 5);
  CHECK(rep.status == EquivReport::Status::ApproxReport);
  CHECK_FALSE(rep.counterexample.has_value());
  CHECK(rep.models >= 20);
}

TEST_CASE("report json is strict") {
  Corpus c;
  c.max_nodes = 2;
  c.ap = {"a"};
  EquivReport rep = equiv_check(bind_gmc(parse_gmc("a")), bind_gmc(parse_gmc("a")), c);
  std::string j = rep.to_json();
  CHECK(j.find("\"status\":\"pass\"") != std::string::npos);
  CHECK(j.find("\"models\":") != std::string::npos);
  CHECK(j.find("\"counterexample\":null") != std::string::npos);
}

TEST_CASE("family corpus source") {
  Corpus c;
  c.source = Corpus::Source::Family;
  c.family = "na";
  c.n_from = 1;
  c.n_to = 3;
  c.depth = 2;
  std::vector<TreeModel> models = c.materialize();
  REQUIRE(models.size() == 3);
  CHECK(models[2].nodes[models[2].root].children.size() == 4);
}
