#include <set>

#include "doctest.h"
#include "mtlkit/tree_model.hpp"

using namespace mtlkit;

namespace {

TreeModel chain_a_at(int len, int pos) {
  return chain(
      len, [pos](int i) { return i == pos - 1 ? std::set<std::string>{"a"} : std::set<std::string>{}; },
      {"a"});
}

KripkeStructure self_loop() {
  KripkeStructure k;
  k.states.resize(1);
  k.edges.emplace_back(0, 0);
  return k;
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

TEST_CASE("chains") {
  TreeModel t = chain_a_at(3, 3);
  CHECK(t.size() == 3);
  CHECK(t.has_label(2, "a"));
  for (int v = 0; v < t.size(); ++v) CHECK(t.nodes[v].children.size() <= 1);
  CHECK(chain(1).size() == 1);
  CHECK_THROWS_AS(chain(0), std::invalid_argument);
}

TEST_CASE("complete binary trees") {
  CHECK(complete_binary(2).size() == 7);
  CHECK(complete_binary(2).nodes[0].children.size() == 2);
  CHECK(complete_binary(0).size() == 1);
}

TEST_CASE("unfolding") {
  TreeModel t1 = unfold(self_loop(), 2);
  CHECK(t1.size() == 3);
  CHECK(t1.nodes[2].frontier);
  CHECK_FALSE(t1.nodes[0].frontier);

  TreeModel t2 = unfold(two_state_clique(), 2);
  CHECK(t2.size() == 7);

  TreeModel t3 = unfold(self_loop(), 0);
  CHECK(t3.size() == 1);
  CHECK(t3.nodes[0].frontier);

  // a state without edges is not frontier-marked at the cut
  KripkeStructure dead;
  dead.states.resize(2);
  dead.edges.emplace_back(0, 1);
  TreeModel t4 = unfold(dead, 1);
  CHECK(t4.size() == 2);
  CHECK_FALSE(t4.nodes[1].frontier);
}

TEST_CASE("unfold prefix coherence") {
  for (int d = 0; d < 3; ++d) {
    TreeModel big = unfold(two_state_clique(), d + 1);
    TreeModel small = unfold(two_state_clique(), d);
    // BFS ids agree on the shared prefix by construction
    REQUIRE(big.size() >= small.size());
    for (int v = 0; v < small.size(); ++v) {
      CHECK(big.nodes[v].parent == small.nodes[v].parent);
      CHECK(big.nodes[v].labels == small.nodes[v].labels);
    }
  }
}

TEST_CASE("family generators match the defining child counts") {
  for (int n = 1; n <= 4; ++n) {
    TreeModel nd = gen_nd(n, 2);
    CHECK((int)nd.nodes[nd.root].children.size() == (n == 1 ? 1 : n * (n - 1) + 1));
    TreeModel d = gen_d(n, 2);
    CHECK((int)d.nodes[d.root].children.size() == (n == 1 ? 1 : n * (n - 1) + 2));
    TreeModel a = gen_a(n, 2);
    CHECK((int)a.nodes[a.root].children.size() == n);
    TreeModel na = gen_na(n, 2);
    CHECK((int)na.nodes[na.root].children.size() == n + 1);

    // class labels determine the degree at every non-frontier node
    for (int v = 0; v < nd.size(); ++v) {
      if (nd.nodes[v].frontier || nd.is_leaf(v)) continue;
      int k = std::stoi(nd.nodes[v].cls.substr(2));
      CHECK((int)nd.nodes[v].children.size() == (k == 1 ? 1 : k * (k - 1) + 1));
    }
    for (int v = 0; v < a.size(); ++v) {
      if (a.nodes[v].frontier || a.is_leaf(v)) continue;
      int k = std::stoi(a.nodes[v].cls.substr(1));
      CHECK((int)a.nodes[v].children.size() == std::max(1, k));
    }
  }
  CHECK_THROWS_AS(gen_nd(0, 1), std::invalid_argument);
}

TEST_CASE("gen_nd(1) and gen_a(1) are chains") {
  TreeModel nd1 = gen_nd(1, 4);
  CHECK(nd1.size() == 5);
  for (int v = 0; v < nd1.size(); ++v) CHECK(nd1.nodes[v].children.size() <= 1);
  TreeModel a1 = gen_a(1, 4);
  for (int v = 0; v < a1.size(); ++v) CHECK(a1.has_label(v, "a"));
}

TEST_CASE("na trees keep an all-empty spine, a trees label every deep path") {
  for (int n = 1; n <= 3; ++n) {
    int depth = n + 2;
    TreeModel na = gen_na(n, depth);
    // follow the NA-class children from the root
    int v = na.root;
    int steps = 0;
    while (true) {
      CHECK(na.nodes[v].labels.empty());
      int next = -1;
      for (int c : na.nodes[v].children)
        if (na.nodes[c].cls.substr(0, 2) == "NA") next = c;
      if (next < 0) break;
      v = next;
      ++steps;
    }
    CHECK(steps == depth);

    TreeModel a = gen_a(n, depth);
    // every root-to-frontier path visits an a-node
    std::vector<int> stack{a.root};
    std::vector<bool> seen_a(a.size(), false);
    seen_a[a.root] = a.has_label(a.root, "a");
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (a.is_leaf(u)) CHECK(seen_a[u]);
      for (int c : a.nodes[u].children) {
        seen_a[c] = seen_a[u] || a.has_label(c, "a");
        stack.push_back(c);
      }
    }
  }
}

TEST_CASE("tree enumeration counts and uniqueness") {
  CHECK(TreeEnumerator(1, {"a"}).total() == 2);
  CHECK(TreeEnumerator(2, {}).total() == 2);
  CHECK(TreeEnumerator(3, {}).total() == 4);
  CHECK(TreeEnumerator(4, {}).total() == 9);  // 1 + 1 + 2 + 5 shapes

  TreeEnumerator en(4, {"a"});
  std::set<std::string> seen;
  uint64_t count = 0;
  while (auto t = en.next()) {
    ++count;
    CHECK(seen.insert(tree_to_json(*t)).second);
    t->validate();
  }
  CHECK(count == en.total());
}

TEST_CASE("second-order quantifier domains") {
  TreeModel c2 = chain(2);
  CHECK(subtrees(c2, QuantKind::Path, QuantMode::Full, false).size() == 3);

  TreeModel b1 = complete_binary(1);
  CHECK(subtrees(b1, QuantKind::Tree, QuantMode::Full, false).size() == 6);
  CHECK(subtrees(b1, QuantKind::Set, QuantMode::Full, false).size() == 8);

  // co-weak on an unmarked finite tree is empty
  CHECK(subtrees(b1, QuantKind::Tree, QuantMode::CoWeak, true).empty());
  CHECK(subtrees(b1, QuantKind::Tree, QuantMode::CoWeak, false).empty());

  // weak keeps everything on a finite model
  CHECK(subtrees(b1, QuantKind::Tree, QuantMode::Weak, false).size() == 6);

  // frontier-marked unfolding has co-weak candidates
  TreeModel u = unfold(self_loop(), 2);
  CHECK_FALSE(subtrees(u, QuantKind::Path, QuantMode::CoWeak, true).empty());
}

TEST_CASE("density oracle") {
  CHECK(density_oracle(two_state_clique()));
  CHECK_FALSE(density_oracle(self_loop()));
  for (int n = 2; n <= 4; ++n) {
    CHECK(density_oracle(gen_d_kripke(n)));
    CHECK_FALSE(density_oracle(gen_nd_kripke(n)));
  }
  CHECK_FALSE(density_oracle(gen_d_kripke(1)));
}

TEST_CASE("path statistics and h-compatibility") {
  TreeModel t = gen_na(3, 6);
  // a path with empty-part 2 and a-part 3: walk NA -> A3 spine then a-nodes
  std::vector<int> path;
  int v = t.root;
  path.push_back(v);  // NA3, empty label
  int a3 = -1;
  for (int c : t.nodes[v].children)
    if (t.nodes[c].cls == "A3") a3 = c;
  REQUIRE(a3 >= 0);
  path.push_back(a3);  // still empty
  v = a3;
  // descend A2 -> A1 -> A1: the last three are labeled once we hit A1
  while ((int)path.size() < 5) {
    int next = t.nodes[v].children[0];
    path.push_back(next);
    v = next;
  }
  PathStats st = path_stats(t, path);
  CHECK(st.n_empty + st.n_a == 5);
  CHECK(st.d_a == 0);

  // reflexivity and refinement
  for (int h = 1; h <= 3; ++h) CHECK(compat(t, h, path, path));
  std::vector<int> p1{t.root};
  std::vector<int> p2{t.root, a3};
  PathStats s1 = path_stats(t, p1), s2 = path_stats(t, p2);
  for (int h = 2; h <= 3; ++h)
    if (compat(h, s1, s2)) CHECK(compat(h - 1, s1, s2));

  // d_a at an NA-node is n even near the horizon
  std::vector<int> spine{t.root};
  CHECK(path_stats(t, spine).d_a == 3);

  CHECK_THROWS_AS(path_stats(t, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(path_stats(t, std::vector<int>{t.root, t.root}), std::invalid_argument);
}

TEST_CASE("json model files round trip") {
  TreeModel t = gen_na(2, 3);
  TreeModel back = tree_from_json(tree_to_json(t));
  CHECK(back.size() == t.size());
  for (int v = 0; v < t.size(); ++v) {
    CHECK(back.nodes[v].parent == t.nodes[v].parent);
    CHECK(back.nodes[v].children == t.nodes[v].children);
    CHECK(back.nodes[v].labels == t.nodes[v].labels);
    CHECK(back.nodes[v].frontier == t.nodes[v].frontier);
  }

  KripkeStructure k = gen_d_kripke(3);
  KripkeStructure kb = kripke_from_json(kripke_to_json(k));
  CHECK(kb.size() == k.size());
  CHECK(kb.edges == k.edges);
  CHECK(kb.init == k.init);

  CHECK_THROWS(tree_from_json("{\"ap\":[],\"nodes\":[]}"));
}

TEST_CASE("model validation rejects broken trees") {
  TreeModel t = chain(3);
  t.nodes[2].parent = 2;  // self-parent cycle
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);

  TreeModel two_roots = chain(2);
  two_roots.nodes[1].parent = -1;
  CHECK_THROWS_AS(two_roots.validate(), std::invalid_argument);
}
