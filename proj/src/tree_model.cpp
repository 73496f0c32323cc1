#include "mtlkit/tree_model.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mtlkit {

// ---------------------------------------------------------------------------
// DenSet
// ---------------------------------------------------------------------------

int DenSet::count() const {
  int c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool DenSet::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

DenSet& DenSet::operator&=(const DenSet& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

DenSet& DenSet::operator|=(const DenSet& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

DenSet DenSet::complement() const {
  DenSet r(n_);
  for (int i = 0; i < n_; ++i)
    if (!test(i)) r.set(i);
  return r;
}

DenSet DenSet::minus(const DenSet& o) const {
  DenSet r = *this;
  for (size_t i = 0; i < r.w_.size(); ++i) r.w_[i] &= ~o.w_[i];
  return r;
}

bool DenSet::subset_of(const DenSet& o) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

std::vector<int> DenSet::elements() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

std::string DenSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int v : elements()) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// KripkeStructure / TreeModel basics
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> KripkeStructure::successors() const {
  std::vector<std::vector<int>> out(states.size());
  for (const auto& [src, dst] : edges) out[src].push_back(dst);
  return out;
}

void KripkeStructure::validate() const {
  if (states.empty()) throw std::invalid_argument("structure has no states");
  if (init < 0 || init >= size()) throw std::invalid_argument("initial state out of range");
  for (const auto& [src, dst] : edges)
    if (src < 0 || src >= size() || dst < 0 || dst >= size())
      throw std::invalid_argument("edge endpoint out of range");
  std::set<std::string> alphabet(ap.begin(), ap.end());
  for (const auto& s : states)
    for (const auto& a : s.labels)
      if (!alphabet.count(a)) throw std::invalid_argument("state label not in AP: " + a);
}

int TreeModel::depth(int v) const {
  int d = 0;
  while (nodes[v].parent >= 0) {
    v = nodes[v].parent;
    ++d;
  }
  return d;
}

bool TreeModel::leq(int u, int v) const {
  while (v >= 0) {
    if (v == u) return true;
    v = nodes[v].parent;
  }
  return false;
}

void TreeModel::validate() const {
  if (nodes.empty()) throw std::invalid_argument("tree has no nodes");
  int roots = 0;
  for (int v = 0; v < size(); ++v) {
    const Node& n = nodes[v];
    if (n.parent < 0) {
      ++roots;
      if (v != root) throw std::invalid_argument("parentless node is not the designated root");
    } else {
      if (n.parent >= size()) throw std::invalid_argument("parent id out of range");
      const auto& pc = nodes[n.parent].children;
      if (std::find(pc.begin(), pc.end(), v) == pc.end())
        throw std::invalid_argument("parent/child links are inconsistent");
    }
    for (int c : n.children)
      if (c < 0 || c >= size() || nodes[c].parent != v)
        throw std::invalid_argument("parent/child links are inconsistent");
  }
  if (roots != 1) throw std::invalid_argument("tree must have exactly one root");
  // reachability and acyclicity
  std::vector<bool> seen(size(), false);
  std::deque<int> q{root};
  seen[root] = true;
  int visited = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    ++visited;
    for (int c : nodes[v].children) {
      if (seen[c]) throw std::invalid_argument("cycle detected");
      seen[c] = true;
      q.push_back(c);
    }
  }
  if (visited != size()) throw std::invalid_argument("not every node is reachable from the root");
  std::set<std::string> alphabet(ap.begin(), ap.end());
  for (const auto& n : nodes)
    for (const auto& a : n.labels)
      if (!alphabet.count(a)) throw std::invalid_argument("node label not in AP: " + a);
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

TreeModel chain(int len, const std::function<std::set<std::string>(int)>& labeling,
                std::vector<std::string> ap) {
  if (len < 1) throw std::invalid_argument("chain: length must be at least 1");
  TreeModel t;
  t.ap = std::move(ap);
  t.nodes.resize(len);
  for (int i = 0; i < len; ++i) {
    t.nodes[i].parent = i - 1;
    if (i + 1 < len) t.nodes[i].children.push_back(i + 1);
    if (labeling) t.nodes[i].labels = labeling(i);
  }
  t.root = 0;
  return t;
}

TreeModel chain(int len) { return chain(len, nullptr, {}); }

TreeModel complete_binary(int depth, std::vector<std::string> ap) {
  TreeModel t;
  t.ap = std::move(ap);
  t.nodes.emplace_back();
  std::vector<int> frontier{0};
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int v : frontier) {
      for (int i = 0; i < 2; ++i) {
        int c = t.size();
        t.nodes.emplace_back();
        t.nodes[c].parent = v;
        t.nodes[v].children.push_back(c);
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return t;
}

TreeModel unfold(const KripkeStructure& k, int depth) {
  if (depth < 0) throw std::invalid_argument("unfold: negative depth");
  k.validate();
  auto succ = k.successors();
  TreeModel t;
  t.ap = k.ap;
  t.source = std::make_shared<KripkeStructure>(k);

  struct Item {
    int node;
    int state;
    int depth;
  };
  std::deque<Item> q;
  auto add_node = [&](int parent, int state) {
    int id = t.size();
    t.nodes.emplace_back();
    t.nodes[id].parent = parent;
    t.nodes[id].labels = k.states[state].labels;
    t.nodes[id].cls = k.states[state].cls;
    t.nodes[id].state = state;
    if (parent >= 0) t.nodes[parent].children.push_back(id);
    return id;
  };
  int root = add_node(-1, k.init);
  q.push_back({root, k.init, 0});
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    if (it.depth == depth) {
      t.nodes[it.node].frontier = !succ[it.state].empty();
      continue;
    }
    for (int dst : succ[it.state]) {
      int c = add_node(it.node, dst);
      q.push_back({c, dst, it.depth + 1});
    }
  }
  return t;
}

// Family structures.  Class ND_k roots have, for each l in [1,k-1], exactly k
// children of class ND_l plus one ND_k child; D_n swaps the self child for
// two D_n children; A_k roots have k children of class A_{k-1}; NA_n roots
// have one NA_n child and n A_n children.  A_1 nodes carry the label a.

KripkeStructure gen_nd_kripke(int n) {
  if (n < 1) throw std::invalid_argument("gen_nd: n must be at least 1");
  KripkeStructure k;
  k.states.resize(n);
  for (int c = 1; c <= n; ++c) k.states[c - 1].cls = "ND" + std::to_string(c);
  k.edges.emplace_back(0, 0);  // ND_1 is the chain
  for (int c = 2; c <= n; ++c) {
    int s = c - 1;
    for (int l = 1; l <= c - 1; ++l)
      for (int i = 0; i < c; ++i) k.edges.emplace_back(s, l - 1);
    k.edges.emplace_back(s, s);
  }
  k.init = n - 1;
  return k;
}

KripkeStructure gen_d_kripke(int n) {
  if (n < 1) throw std::invalid_argument("gen_d: n must be at least 1");
  if (n == 1) {
    KripkeStructure k = gen_nd_kripke(1);
    k.states[0].cls = "D1";
    return k;
  }
  KripkeStructure k = gen_nd_kripke(n - 1);
  int d = k.size();
  k.states.push_back({{}, "D" + std::to_string(n)});
  for (int l = 1; l <= n - 1; ++l)
    for (int i = 0; i < n; ++i) k.edges.emplace_back(d, l - 1);
  k.edges.emplace_back(d, d);
  k.edges.emplace_back(d, d);
  k.init = d;
  return k;
}

KripkeStructure gen_a_kripke(int n) {
  if (n < 1) throw std::invalid_argument("gen_a: n must be at least 1");
  KripkeStructure k;
  k.ap = {"a"};
  k.states.resize(n);
  k.states[0].labels = {"a"};
  for (int c = 1; c <= n; ++c) k.states[c - 1].cls = "A" + std::to_string(c);
  k.edges.emplace_back(0, 0);
  for (int c = 2; c <= n; ++c)
    for (int i = 0; i < c; ++i) k.edges.emplace_back(c - 1, c - 2);
  k.init = n - 1;
  return k;
}

KripkeStructure gen_na_kripke(int n) {
  if (n < 1) throw std::invalid_argument("gen_na: n must be at least 1");
  KripkeStructure k = gen_a_kripke(n);
  int na = k.size();
  k.states.push_back({{}, "NA" + std::to_string(n)});
  k.edges.emplace_back(na, na);
  for (int i = 0; i < n; ++i) k.edges.emplace_back(na, n - 1);
  k.init = na;
  return k;
}

TreeModel gen_nd(int n, int depth) { return unfold(gen_nd_kripke(n), depth); }
TreeModel gen_d(int n, int depth) { return unfold(gen_d_kripke(n), depth); }
TreeModel gen_a(int n, int depth) { return unfold(gen_a_kripke(n), depth); }
TreeModel gen_na(int n, int depth) { return unfold(gen_na_kripke(n), depth); }

// ---------------------------------------------------------------------------
// enumeration of ordered trees
// ---------------------------------------------------------------------------

namespace {

struct Shape {
  std::vector<Shape> children;
  int size = 1;
};

// all ordered shapes with exactly n nodes
std::vector<Shape> shapes_exact(int n) {
  if (n == 1) return {Shape{}};
  std::vector<Shape> out;
  // first child takes f nodes, the rest form the remaining forest
  std::function<void(int, std::vector<Shape>&)> forests = [&](int total, std::vector<Shape>& prefix) {
    if (total == 0) {
      Shape s;
      s.children = prefix;
      s.size = n;
      out.push_back(std::move(s));
      return;
    }
    for (int f = 1; f <= total; ++f) {
      for (const Shape& c : shapes_exact(f)) {
        prefix.push_back(c);
        forests(total - f, prefix);
        prefix.pop_back();
      }
    }
  };
  std::vector<Shape> prefix;
  forests(n - 1, prefix);
  return out;
}

void shape_to_tree(const Shape& s, int parent, TreeModel& t) {
  int id = t.size();
  t.nodes.emplace_back();
  t.nodes[id].parent = parent;
  if (parent >= 0) t.nodes[parent].children.push_back(id);
  for (const Shape& c : s.children) shape_to_tree(c, id, t);
}

}  // namespace

std::vector<TreeModel> enumerate_shapes(int max_nodes) {
  if (max_nodes < 1) throw std::invalid_argument("enumerate_shapes: need at least one node");
  std::vector<TreeModel> out;
  for (int n = 1; n <= max_nodes; ++n) {
    for (const Shape& s : shapes_exact(n)) {
      TreeModel t;
      shape_to_tree(s, -1, t);
      t.root = 0;
      out.push_back(std::move(t));
    }
  }
  return out;
}

uint64_t labeling_count(int nodes, int ap_count) {
  uint64_t per_node = uint64_t(1) << ap_count;
  uint64_t total = 1;
  for (int i = 0; i < nodes; ++i) total *= per_node;
  return total;
}

void apply_labeling(TreeModel& shape, const std::vector<std::string>& ap, uint64_t index) {
  shape.ap = ap;
  uint64_t radix = uint64_t(1) << ap.size();
  for (auto& n : shape.nodes) {
    uint64_t digit = index % radix;
    index /= radix;
    n.labels.clear();
    for (size_t b = 0; b < ap.size(); ++b)
      if ((digit >> b) & 1) n.labels.insert(ap[b]);
  }
}

TreeEnumerator::TreeEnumerator(int max_nodes, std::vector<std::string> ap)
    : shapes_(enumerate_shapes(max_nodes)), ap_(std::move(ap)) {}

uint64_t TreeEnumerator::total() const {
  uint64_t sum = 0;
  for (const auto& s : shapes_) sum += labeling_count(s.size(), static_cast<int>(ap_.size()));
  return sum;
}

std::optional<TreeModel> TreeEnumerator::next() {
  if (shape_ >= shapes_.size()) return std::nullopt;
  TreeModel t = shapes_[shape_];
  apply_labeling(t, ap_, labeling_);
  if (++labeling_ >= labeling_count(t.size(), static_cast<int>(ap_.size()))) {
    labeling_ = 0;
    ++shape_;
  }
  return t;
}

// ---------------------------------------------------------------------------
// second-order quantifier domains
// ---------------------------------------------------------------------------

namespace {

void connected_sets_from(const TreeModel& t, int r, std::vector<DenSet>& out) {
  // sets rooted at r: r plus, for each child, either nothing or a set rooted
  // at that child
  std::vector<DenSet> acc{[&] {
    DenSet s(t.size());
    s.set(r);
    return s;
  }()};
  for (int c : t.nodes[r].children) {
    std::vector<DenSet> sub;
    connected_sets_from(t, c, sub);
    std::vector<DenSet> next;
    next.reserve(acc.size() * (sub.size() + 1));
    for (const DenSet& a : acc) {
      next.push_back(a);
      for (const DenSet& s : sub) next.push_back(a | s);
    }
    acc = std::move(next);
  }
  for (auto& s : acc) out.push_back(std::move(s));
}

void paths_from(const TreeModel& t, int r, DenSet prefix, std::vector<DenSet>& out) {
  prefix.set(r);
  out.push_back(prefix);
  for (int c : t.nodes[r].children) paths_from(t, c, prefix, out);
}

}  // namespace

std::vector<DenSet> subtrees(const TreeModel& t, QuantKind kind, QuantMode mode, bool horizon_enabled) {
  int n = t.size();
  std::vector<DenSet> out;
  switch (kind) {
    case QuantKind::Set: {
      if (n > 24) throw std::invalid_argument("subtrees: model too large for set quantification");
      uint64_t total = uint64_t(1) << n;
      out.reserve(total);
      for (uint64_t m = 0; m < total; ++m) {
        DenSet s(n);
        for (int i = 0; i < n; ++i)
          if ((m >> i) & 1) s.set(i);
        out.push_back(std::move(s));
      }
      break;
    }
    case QuantKind::Tree:
      for (int r = 0; r < n; ++r) connected_sets_from(t, r, out);
      break;
    case QuantKind::Path:
      for (int r = 0; r < n; ++r) paths_from(t, r, DenSet(n), out);
      break;
  }
  if (mode == QuantMode::CoWeak) {
    // only sets standing in for infinite objects survive
    std::vector<DenSet> kept;
    if (horizon_enabled) {
      DenSet frontier(n);
      for (int v = 0; v < n; ++v)
        if (t.nodes[v].frontier) frontier.set(v);
      for (auto& s : out)
        if ((s & frontier).any()) kept.push_back(std::move(s));
    }
    out = std::move(kept);
  }
  // Weak keeps finite candidates only, which on a finite model is all of them.
  return out;
}

// ---------------------------------------------------------------------------
// density oracle
// ---------------------------------------------------------------------------

bool density_oracle(const KripkeStructure& k) {
  k.validate();
  int n = k.size();
  auto succ = k.successors();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    // branching states: >= 2 retained outgoing edges
    std::vector<bool> branching(n, false);
    for (int s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      int deg = 0;
      for (int d : succ[s])
        if (alive[d]) ++deg;
      branching[s] = deg >= 2;
    }
    // states that can reach a branching state within the retained subgraph
    std::vector<bool> good(n, false);
    std::deque<int> q;
    for (int s = 0; s < n; ++s)
      if (alive[s] && branching[s]) {
        good[s] = true;
        q.push_back(s);
      }
    // reverse reachability
    std::vector<std::vector<int>> preds(n);
    for (const auto& [src, dst] : k.edges)
      if (alive[src] && alive[dst]) preds[dst].push_back(src);
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (int p : preds[s])
        if (alive[p] && !good[p]) {
          good[p] = true;
          q.push_back(p);
        }
    }
    for (int s = 0; s < n; ++s)
      if (alive[s] && !good[s]) {
        alive[s] = false;
        changed = true;
      }
  }
  // some surviving state reachable from the initial one
  std::vector<bool> seen(n, false);
  std::deque<int> q{k.init};
  seen[k.init] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (alive[s]) return true;
    for (int d : succ[s])
      if (!seen[d]) {
        seen[d] = true;
        q.push_back(d);
      }
  }
  return false;
}

// ---------------------------------------------------------------------------
// path statistics
// ---------------------------------------------------------------------------

PathStats path_stats(const TreeModel& t, const std::vector<int>& path) {
  if (path.empty()) throw std::invalid_argument("path_stats: empty path");
  for (size_t i = 0; i < path.size(); ++i) {
    int v = path[i];
    if (v < 0 || v >= t.size()) throw std::invalid_argument("path_stats: node out of range");
    if (i > 0 && t.nodes[v].parent != path[i - 1])
      throw std::invalid_argument("path_stats: not a child-chain of the tree");
  }
  PathStats st;
  size_t first_a = path.size();
  for (size_t i = 0; i < path.size(); ++i) {
    if (t.has_label(path[i], "a")) {
      first_a = i;
      break;
    }
  }
  for (size_t i = first_a; i < path.size(); ++i)
    if (!t.has_label(path[i], "a"))
      throw std::invalid_argument("path_stats: path is not an empty-part followed by an a-part");
  st.n_empty = static_cast<int>(first_a);
  st.n_a = static_cast<int>(path.size() - first_a);
  if (st.n_a > 0) {
    st.d_a = 0;
    return st;
  }
  // distance from the last node to an a-node, resolved on the source structure
  if (!t.source) throw std::invalid_argument("path_stats: tree has no originating structure");
  const KripkeStructure& k = *t.source;
  auto succ = k.successors();
  int start = t.nodes[path.back()].state;
  if (start < 0) throw std::invalid_argument("path_stats: node has no originating state");
  std::vector<int> dist(k.size(), -1);
  std::deque<int> q{start};
  dist[start] = 0;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (k.states[s].labels.count("a")) {
      st.d_a = dist[s];
      return st;
    }
    for (int d : succ[s])
      if (dist[d] < 0) {
        dist[d] = dist[s] + 1;
        q.push_back(d);
      }
  }
  throw std::invalid_argument("path_stats: no a-node reachable");
}

bool compat(int h, const PathStats& a, const PathStats& b) {
  if (a.n_a != b.n_a) return false;
  if (!(a.n_empty == b.n_empty || (a.n_empty >= h && b.n_empty >= h))) return false;
  if (!(a.d_a == b.d_a || (a.d_a >= h && b.d_a >= h))) return false;
  return true;
}

bool compat(const TreeModel& t, int h, const std::vector<int>& p1, const std::vector<int>& p2) {
  return compat(h, path_stats(t, p1), path_stats(t, p2));
}

// ---------------------------------------------------------------------------
// JSON model files
// ---------------------------------------------------------------------------

using nlohmann::json;

std::string tree_to_json(const TreeModel& t) {
  json j;
  j["ap"] = t.ap;
  json nodes = json::array();
  for (int v = 0; v < t.size(); ++v) {
    const auto& n = t.nodes[v];
    json jn;
    jn["id"] = v;
    if (n.parent < 0)
      jn["parent"] = nullptr;
    else
      jn["parent"] = n.parent;
    jn["labels"] = std::vector<std::string>(n.labels.begin(), n.labels.end());
    jn["frontier"] = n.frontier;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  return j.dump();
}

TreeModel tree_from_json(const std::string& text) {
  json j = json::parse(text);
  TreeModel t;
  t.ap = j.at("ap").get<std::vector<std::string>>();
  const json& nodes = j.at("nodes");
  t.nodes.resize(nodes.size());
  int root = -1;
  for (const auto& jn : nodes) {
    int id = jn.at("id").get<int>();
    if (id < 0 || id >= t.size()) throw std::invalid_argument("tree json: node id not dense");
    auto& n = t.nodes[id];
    if (jn.at("parent").is_null()) {
      n.parent = -1;
      root = id;
    } else {
      n.parent = jn.at("parent").get<int>();
    }
    for (const auto& l : jn.at("labels")) n.labels.insert(l.get<std::string>());
    n.frontier = jn.value("frontier", false);
  }
  if (root < 0) throw std::invalid_argument("tree json: no root");
  t.root = root;
  // child order follows node-array order
  for (const auto& jn : nodes) {
    int id = jn.at("id").get<int>();
    int p = t.nodes[id].parent;
    if (p >= 0) t.nodes[p].children.push_back(id);
  }
  t.validate();
  return t;
}

std::string kripke_to_json(const KripkeStructure& k) {
  json j;
  j["ap"] = k.ap;
  json states = json::array();
  for (int s = 0; s < k.size(); ++s) {
    json js;
    js["id"] = s;
    js["labels"] = std::vector<std::string>(k.states[s].labels.begin(), k.states[s].labels.end());
    states.push_back(std::move(js));
  }
  j["states"] = std::move(states);
  json edges = json::array();
  for (const auto& [src, dst] : k.edges) edges.push_back(json::array({src, dst}));
  j["edges"] = std::move(edges);
  j["init"] = k.init;
  return j.dump();
}

KripkeStructure kripke_from_json(const std::string& text) {
  json j = json::parse(text);
  KripkeStructure k;
  k.ap = j.at("ap").get<std::vector<std::string>>();
  const json& states = j.at("states");
  k.states.resize(states.size());
  for (const auto& js : states) {
    int id = js.at("id").get<int>();
    if (id < 0 || id >= k.size()) throw std::invalid_argument("kripke json: state id not dense");
    for (const auto& l : js.at("labels")) k.states[id].labels.insert(l.get<std::string>());
  }
  for (const auto& je : j.at("edges")) k.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
  k.init = j.at("init").get<int>();
  k.validate();
  return k;
}

}  // namespace mtlkit
