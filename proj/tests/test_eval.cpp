#include <random>

#include "doctest.h"
#include "mtlkit/eval.hpp"
#include "mtlkit/formula_ops.hpp"
#include "mtlkit/lab.hpp"
#include "mtlkit/syntax.hpp"
#include "mtlkit/translate.hpp"
#include "mtlkit/tree_model.hpp"

using namespace mtlkit;

namespace {

TreeModel chain_a_at(int len, int pos) {
  return chain(
      len, [pos](int i) { return i == pos - 1 ? std::set<std::string>{"a"} : std::set<std::string>{}; },
      {"a"});
}

std::vector<TreeModel> small_corpus(int max_nodes, std::vector<std::string> ap) {
  Corpus c;
  c.max_nodes = max_nodes;
  c.ap = std::move(ap);
  return c.materialize();
}

KripkeStructure two_state_clique() {
  KripkeStructure k;
  k.states.resize(2);
  k.edges.emplace_back(0, 0);
  k.edges.emplace_back(0, 1);
  k.edges.emplace_back(1, 0);
  k.edges.emplace_back(1, 1);
  return k;
}

}  // namespace

TEST_CASE("msol satisfaction basics") {
  EvalConfig cfg;
  MsolPtr wit = parse_msol("ET X. E x. x in X");
  MsolPtr root = parse_msol("E x. A y. x <= y");
  MsolPtr density = stdlib_density_mtl();
  for (const TreeModel& t : small_corpus(4, {"a"})) {
    CHECK(eval_msol(wit, t, {}, {}, cfg));
    CHECK(eval_msol(root, t, {}, {}, cfg));
    CHECK_FALSE(eval_msol(density, t, {}, {}, cfg));
  }
  // density also fails on slightly larger dense-looking finite trees
  CHECK_FALSE(eval_msol(density, complete_binary(2), {}, {}, cfg));
}

TEST_CASE("msol valuations and denotations") {
  EvalConfig cfg;
  TreeModel t = chain_a_at(3, 2);
  Valuation1 v1;
  v1.at["x"] = 1;
  CHECK(eval_msol(parse_msol("a(x)"), t, v1, {}, cfg));
  v1.at["x"] = 0;
  CHECK_FALSE(eval_msol(parse_msol("a(x)"), t, v1, {}, cfg));

  DenSet atoms = denot_msol(parse_msol("a(x)"), "x", t, {}, cfg);
  CHECK(atoms.elements() == std::vector<int>{1});

  DenSet leaves = denot_msol(parse_msol("A y. !(x < y)"), "x", t, {}, cfg);
  CHECK(leaves.elements() == std::vector<int>{2});

  CHECK_THROWS_AS(denot_msol(parse_msol("a(y)"), "x", t, {}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(eval_msol(parse_msol("a(x)"), t, {}, {}, cfg), std::invalid_argument);
}

TEST_CASE("msol second-order valuations") {
  EvalConfig cfg;
  TreeModel t = chain(3);
  Valuation2 v2;
  DenSet s(3);
  s.set(0);
  s.set(2);
  v2.at["X"] = s;
  // X with a gap is not a tree
  CHECK_FALSE(eval_msol(stdlib_tree("X"), t, {}, v2, cfg));
  // two incomparable nodes are not a tree either
  TreeModel b = complete_binary(1);
  DenSet pair(3);
  pair.set(1);
  pair.set(2);
  Valuation2 v2b;
  v2b.at["X"] = pair;
  CHECK_FALSE(eval_msol(stdlib_tree("X"), b, {}, v2b, cfg));
}

TEST_CASE("stdlib tree and path formulas agree with the enumerated domains") {
  EvalConfig cfg;
  for (const TreeModel& t : small_corpus(4, {})) {
    std::vector<DenSet> trees = subtrees(t, QuantKind::Tree, QuantMode::Full, false);
    std::vector<DenSet> paths = subtrees(t, QuantKind::Path, QuantMode::Full, false);
    std::vector<DenSet> sets = subtrees(t, QuantKind::Set, QuantMode::Full, false);
    auto contains = [](const std::vector<DenSet>& v, const DenSet& s) {
      for (const auto& x : v)
        if (x == s) return true;
      return false;
    };
    for (const DenSet& s : sets) {
      if (s.none()) continue;  // the predicates constrain nonempty sets only
      Valuation2 v2;
      v2.at["X"] = s;
      CHECK(eval_msol(stdlib_tree("X"), t, {}, v2, cfg) == contains(trees, s));
      CHECK(eval_msol(stdlib_path("X"), t, {}, v2, cfg) == contains(paths, s));
    }
  }
}

TEST_CASE("kleene iteration on trees") {
  EvalConfig cfg;
  CHECK(eval_gmc(stdlib_phi_den_gmc(), complete_binary(2), {}, cfg).none());

  DenSet all = eval_gmc(stdlib_af_a_gmc(), chain_a_at(3, 3), {}, cfg);
  CHECK(all.count() == 3);

  std::mt19937_64 rng(3);
  for (const TreeModel& t : small_corpus(5, {"a"})) {
    GmcPtr f = gen_gmc(3, rng, {"a"});
    FreeVars fv = free_vars(f);
    GmcAssignment asg;
    for (const auto& v : fv.so) asg.at[v] = DenSet(t.size());
    EvalStats stats;
    eval_gmc(f, t, asg, cfg, &stats);
    CHECK(stats.max_fix_rounds <= t.size() + 1);
  }
}

TEST_CASE("E(a U q) encoding equals the CTL* semantics") {
  EvalConfig cfg;
  GmcPtr enc = parse_gmc("mu X. q | (a & <1> X)");
  CctlStatePtr ctl = parse_cctl("E (a U q)");
  for (const TreeModel& t : small_corpus(5, {"a", "q"})) {
    CHECK(eval_gmc(enc, t, {}, cfg) == cctl_denot(ctl, t, cfg));
  }
}

TEST_CASE("graph evaluation with edge multiplicities") {
  KripkeStructure clique = two_state_clique();
  CHECK(eval_gmc_graph(stdlib_phi_den_gmc(), clique, {}).count() == 2);

  KripkeStructure loop;
  loop.states.resize(1);
  loop.edges.emplace_back(0, 0);
  CHECK(eval_gmc_graph(stdlib_phi_den_gmc(), loop, {}).none());

  // a parallel edge counts twice for the graded diamond
  KripkeStructure dbl;
  dbl.states.resize(1);
  dbl.edges.emplace_back(0, 0);
  dbl.edges.emplace_back(0, 0);
  CHECK(eval_gmc_graph(parse_gmc("<2> tt"), dbl, {}).count() == 1);
  CHECK(eval_gmc_graph(stdlib_phi_den_gmc(), dbl, {}).count() == 1);

  // a tree encoded as a structure evaluates identically
  std::mt19937_64 rng(17);
  for (const TreeModel& t : small_corpus(4, {"a"})) {
    KripkeStructure k;
    k.ap = t.ap;
    k.states.resize(t.size());
    for (int v = 0; v < t.size(); ++v) {
      k.states[v].labels = t.nodes[v].labels;
      for (int c : t.nodes[v].children) k.edges.emplace_back(v, c);
    }
    k.init = t.root;
    GmcPtr f = gen_gmc(3, rng, {"a"});
    FreeVars fv = free_vars(f);
    GmcAssignment asg;
    for (const auto& v : fv.so) asg.at[v] = DenSet::full(t.size());
    CHECK(eval_gmc(f, t, asg, {}) == eval_gmc_graph(f, k, asg));
  }
}

TEST_CASE("pnf preserves denotations") {
  EvalConfig cfg;
  std::mt19937_64 rng(23);
  std::vector<TreeModel> corpus = small_corpus(5, {"a"});
  VarRoleSets roles;
  roles.zero = {"Z", "B"};
  roles.one = {"O", "B"};
  for (int i = 0; i < 100; ++i) {
    GmcPtr f = gen_theta(roles, 3, rng, {"a"});
    const TreeModel& t = corpus[rng() % corpus.size()];
    GmcAssignment asg;
    for (const auto& v : {"Z", "B", "O"}) {
      DenSet s(t.size());
      for (int j = 0; j < t.size(); ++j)
        if (rng() % 2) s.set(j);
      asg.at[v] = s;
    }
    CHECK(eval_gmc(f, t, asg, cfg) == eval_gmc(pnf(f), t, asg, cfg));
  }
}

TEST_CASE("pnf keeps one-step membership") {
  std::mt19937_64 rng(29);
  int tried = 0;
  for (int i = 0; i < 600 && tried < 100; ++i) {
    // closed fixpoint sentences: the duality of the translators must stay
    // inside the fragment
    GmcPtr f = gen_theta({}, 3, rng, {"a"});
    if (f->kind != GmcNode::Kind::Mu && f->kind != GmcNode::Kind::Nu) continue;
    ++tried;
    CHECK(check_one_step(pnf(f), {}).accepted());
    VarRoleSets inner;
    inner.zero.insert(f->name);
    inner.one.insert(f->name);
    GmcPtr dual = pnf(gmc::not_(subst_var(f->a, f->name, gmc::not_(gmc::var(f->name)))));
    CHECK(check_one_step(dual, inner).accepted());
  }
  CHECK(tried == 100);
}

TEST_CASE("counting CTL* state semantics") {
  EvalConfig cfg;
  CHECK(eval_cctl(parse_cctl("D{2} tt"), complete_binary(1), 0, cfg));
  CHECK(eval_cctl(parse_cctl("D{2} tt"), complete_binary(3), 0, cfg));
  CHECK_FALSE(eval_cctl(parse_cctl("D{2} tt"), chain(3), 0, cfg));
  CHECK(eval_cctl(parse_cctl("D{0} a"), chain(1), 0, cfg));  // at least zero children

  CHECK(eval_cctl(parse_cctl("E (X a)"), chain_a_at(2, 2), 0, cfg));
  CHECK_FALSE(eval_cctl(parse_cctl("E (X a)"), chain_a_at(1, 1), 0, cfg));

  TreeModel d2 = gen_d(2, 3);
  TreeModel nd2 = gen_nd(2, 3);
  CHECK(eval_cctl(parse_cctl("D{4} tt"), d2, d2.root, cfg));
  CHECK_FALSE(eval_cctl(parse_cctl("D{4} tt"), nd2, nd2.root, cfg));

  // one-node paths are paths: E a is just a
  for (const TreeModel& t : small_corpus(4, {"a"}))
    for (int v = 0; v < t.size(); ++v)
      CHECK(eval_cctl(parse_cctl("E a"), t, v, cfg) == t.has_label(v, "a"));

  CHECK_THROWS_AS(eval_cctl(parse_cctl("a"), chain(2), 5, cfg), std::invalid_argument);
}

TEST_CASE("path domains") {
  // on chain(3) with a at the end, AF a fails for domain=all (the one-node
  // path from the root has no a) but holds for maximal paths
  TreeModel t = chain_a_at(3, 3);
  EvalConfig all;
  EvalConfig maximal;
  maximal.path_domain = PathDomain::Maximal;
  CctlStatePtr afa = parse_cctl("A (F a)");
  CHECK_FALSE(eval_cctl(afa, t, 0, all));
  CHECK(eval_cctl(afa, t, 0, maximal));

  // infinite-approx needs the horizon convention
  EvalConfig bad;
  bad.path_domain = PathDomain::InfiniteApprox;
  CHECK_THROWS_AS(eval_cctl(afa, t, 0, bad), std::invalid_argument);

  KripkeStructure loop;
  loop.states.resize(1);
  loop.edges.emplace_back(0, 0);
  TreeModel u = unfold(loop, 3);
  EvalConfig inf;
  inf.path_domain = PathDomain::InfiniteApprox;
  inf.horizon_enabled = true;
  // only the full frontier-touching path counts
  CHECK(eval_cctl(cctl::exists(cctl::embed(cctl::count(1, cctl::tt()))), u, 0, inf));
  CHECK_FALSE(eval_cctl(cctl::exists(cctl::pnot(cctl::next(cctl::embed(cctl::tt())))), u, 0, inf));
}

TEST_CASE("explicit path formula evaluation") {
  EvalConfig weak;
  weak.path_domain = PathDomain::Finite;
  TreeModel t = chain_a_at(3, 3);
  std::vector<int> full{0, 1, 2};
  CctlPathPtr fa = cctl::until(cctl::embed(cctl::tt()), cctl::embed(cctl::atom("a")));
  CHECK(eval_cctl_path(fa, t, full, 0, weak));
  CHECK(eval_cctl_path(fa, t, full, 2, weak));
  std::vector<int> prefix{0, 1};
  CHECK_FALSE(eval_cctl_path(fa, t, prefix, 0, weak));
  CHECK_THROWS_AS(eval_cctl_path(fa, t, std::vector<int>{0, 2}, 0, weak), std::invalid_argument);
}

TEST_CASE("substructure semantics") {
  EvalConfig relax;
  relax.relax_nonblocking = true;

  // single-node substructure: no strict subtree candidates
  TreeModel t1 = chain(1);
  DenSet s1 = DenSet::full(1);
  CHECK_FALSE(eval_stl(parse_stl("(a UU{ff} b)"), t1, s1, 0, relax));
  CHECK(eval_stl(parse_stl("(a RR{ff} b)"), t1, s1, 0, relax));

  // with chi = tt the only preserving subtree is the tree itself
  for (const TreeModel& t : small_corpus(4, {"a", "b"})) {
    DenSet full = DenSet::full(t.size());
    CHECK_FALSE(eval_stl(parse_stl("(a UU{tt} b)"), t, full, t.root, relax));
    CHECK(eval_stl(parse_stl("(a RR{tt} b)"), t, full, t.root, relax));
  }

  // hand enumeration on the 3-node star: root labeled a and b
  TreeModel star;
  star.ap = {"a", "b"};
  star.nodes.resize(3);
  star.nodes[0].labels = {"a", "b"};
  star.nodes[0].children = {1, 2};
  star.nodes[1].parent = 0;
  star.nodes[2].parent = 0;
  // strict subtrees with the same root: {0}, {0,1}, {0,2}; all satisfy b at
  // the root, and every tree strictly between satisfies a at the root
  CHECK(eval_stl(parse_stl("(a UU{ff} b)"), star, DenSet::full(3), 0, relax));
  // demanding a branching witness below fails: no strict subtree keeps both leaves
  CHECK_FALSE(eval_stl(parse_stl("((D{1} tt) UU{ff} (D{2} tt))"), star, DenSet::full(3), 0, relax));
  // on the substructure {0,1} there is a supertree strictly between it and the star
  DenSet sub(3);
  sub.set(0);
  sub.set(1);
  CHECK(eval_stl(parse_stl("(tt SS{ff} (D{2} tt))"), star, sub, 0, relax));
  CHECK_FALSE(eval_stl(parse_stl("(tt SS{ff} (D{2} tt))"), star, DenSet::full(3), 0, relax));

  // the non-relaxed semantics requires frontier-marked leaves
  KripkeStructure loop;
  loop.states.resize(1);
  loop.edges.emplace_back(0, 0);
  TreeModel u = unfold(loop, 2);
  EvalConfig strictcfg;
  strictcfg.horizon_enabled = true;
  // the only non-blocking strict subtree of the 3-chain is nothing: removing
  // the leaf leaves an unmarked leaf
  CHECK_FALSE(eval_stl(parse_stl("(tt UU{ff} tt)"), u, DenSet::full(3), 0, strictcfg));

  CHECK_THROWS_AS(eval_stl(parse_stl("a"), star, sub, 1, relax), std::invalid_argument);
}

TEST_CASE("stl denotation re-roots at every node") {
  EvalConfig relax;
  relax.relax_nonblocking = true;
  for (const TreeModel& t : small_corpus(4, {"a", "b"})) {
    DenSet d = stl_denot(parse_stl("(a UU{ff} b)"), t, relax);
    for (int v = 0; v < t.size(); ++v) {
      DenSet sub(t.size());
      for (int u = 0; u < t.size(); ++u)
        if (t.leq(v, u)) sub.set(u);
      CHECK(d.test(v) == eval_stl(parse_stl("(a UU{ff} b)"), t, sub, v, relax));
    }
  }
}

TEST_CASE("restriction operators") {
  TreeModel c3 = chain(3);
  DenSet w(3);
  w.set(0);
  w.set(2);
  CHECK(restrict_component(w, 0, c3).elements() == std::vector<int>{0});
  CHECK(restrict_component(DenSet::full(3), 0, c3).count() == 3);

  TreeModel b2 = complete_binary(2);
  DenSet pair(7);
  pair.set(1);
  pair.set(3);  // c1 and a leaf under it
  CHECK(restrict_component(pair, 1, b2).count() == 2);
  CHECK_THROWS_AS(restrict_component(pair, 0, b2), std::invalid_argument);

  VarRoleSets roles;
  roles.zero = {"Z"};
  roles.one = {"O"};
  VarRoleSets both;
  both.zero = {"B"};
  both.one = {"B"};
  TreeModel b1 = complete_binary(1);
  DenSet root_only(3);
  root_only.set(0);
  GmcAssignment all;
  all.at["Z"] = DenSet::full(3);
  all.at["O"] = DenSet::full(3);
  GmcAssignment r = restrict_assignment(all, root_only, roles, b1);
  CHECK(r.at["Z"].elements() == std::vector<int>{0});
  CHECK(r.at["O"].elements() == std::vector<int>{1, 2});
  GmcAssignment allb;
  allb.at["B"] = DenSet::full(3);
  CHECK(restrict_assignment(allb, root_only, both, b1).at["B"].count() == 3);

  CHECK(one_step_sim(all, all, root_only, roles, b1));
  GmcAssignment bigger;
  bigger.at["Z"] = DenSet::full(3);
  bigger.at["O"] = DenSet::full(3);
  CHECK(one_step_sim(r, bigger, root_only, roles, b1));
  GmcAssignment missing;
  CHECK_THROWS_AS(one_step_sim(all, missing, root_only, roles, b1), std::invalid_argument);
}

TEST_CASE("mode coherence on finite trees") {
  EvalConfig full;
  EvalConfig weak;
  weak.mode = QuantMode::Weak;
  EvalConfig cw;
  cw.mode = QuantMode::CoWeak;
  std::mt19937_64 rng(31);
  std::vector<TreeModel> corpus = small_corpus(4, {"a"});
  for (int i = 0; i < 60; ++i) {
    MsolPtr f = gen_msol(3, rng, {"a"});
    FreeVars fv = free_vars(f);
    for (const auto& v : fv.fo) f = msol::exists1(v, f);
    for (const auto& v : fv.so) f = msol::exists2(QuantKind::Tree, v, f);
    const TreeModel& t = corpus[rng() % corpus.size()];
    CHECK(eval_msol(f, t, {}, {}, full) == eval_msol(f, t, {}, {}, weak));
  }
  // co-weak existentials are false on unmarked finite trees
  MsolPtr ex = parse_msol("ET X. E x. x in X");
  for (const TreeModel& t : corpus) CHECK_FALSE(eval_msol(ex, t, {}, {}, cw));
}

TEST_CASE("graded duality") {
  EvalConfig cfg;
  std::mt19937_64 rng(37);
  VarRoleSets roles;
  roles.zero = {"Z"};
  roles.one = {"O"};
  std::vector<TreeModel> corpus = small_corpus(5, {"a"});
  for (int i = 0; i < 80; ++i) {
    const TreeModel& t = corpus[rng() % corpus.size()];
    GmcPtr phi = gen_phi(roles, 2, rng, {"a"});
    uint32_t k = rng() % 3;
    GmcAssignment asg;
    for (const auto& v : {"Z", "O"}) {
      DenSet s(t.size());
      for (int j = 0; j < t.size(); ++j)
        if (rng() % 2) s.set(j);
      asg.at[v] = s;
    }
    DenSet lhs = eval_gmc(gmc::box(k, phi), t, asg, cfg);
    DenSet rhs = eval_gmc(gmc::diamond(k, gmc::not_(phi)), t, asg, cfg).complement();
    CHECK(lhs == rhs);
  }
}
