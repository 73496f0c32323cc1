#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtlkit/formula.hpp"

namespace mtlkit {

// Dynamic bitset over node or state ids; the common denotation currency.
class DenSet {
 public:
  DenSet() = default;
  explicit DenSet(int n) : n_(n), w_((n + 63) / 64, 0) {}
  static DenSet full(int n) {
    DenSet s(n);
    for (int i = 0; i < n; ++i) s.set(i);
    return s;
  }

  int universe() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v = true) {
    if (v)
      w_[i >> 6] |= uint64_t(1) << (i & 63);
    else
      w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }
  int count() const;
  bool any() const;
  bool none() const { return !any(); }

  DenSet& operator&=(const DenSet& o);
  DenSet& operator|=(const DenSet& o);
  DenSet operator&(const DenSet& o) const {
    DenSet r = *this;
    r &= o;
    return r;
  }
  DenSet operator|(const DenSet& o) const {
    DenSet r = *this;
    r |= o;
    return r;
  }
  DenSet complement() const;
  DenSet minus(const DenSet& o) const;
  bool operator==(const DenSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const DenSet& o) const { return !(*this == o); }
  bool subset_of(const DenSet& o) const;
  std::vector<int> elements() const;
  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

struct KripkeStructure {
  struct State {
    std::set<std::string> labels;
    std::string cls;  // family class annotation, empty when not applicable
  };
  std::vector<State> states;
  std::vector<std::pair<int, int>> edges;  // parallel edges allowed; order is child order
  int init = 0;
  std::vector<std::string> ap;

  int size() const { return static_cast<int>(states.size()); }
  // Edge targets per state with multiplicity, in edge order.
  std::vector<std::vector<int>> successors() const;
  void validate() const;
};

// Explicit finite rooted ordered labeled tree, the desk-scale semantic domain.
struct TreeModel {
  struct Node {
    int parent = -1;
    std::vector<int> children;
    std::set<std::string> labels;
    bool frontier = false;  // horizon mark on truncated unfoldings
    std::string cls;        // family class annotation
    int state = -1;         // originating Kripke state for unfoldings
  };
  std::vector<Node> nodes;
  int root = 0;
  std::vector<std::string> ap;
  std::shared_ptr<const KripkeStructure> source;  // set by unfold

  int size() const { return static_cast<int>(nodes.size()); }
  bool is_leaf(int v) const { return nodes[v].children.empty(); }
  bool has_label(int v, const std::string& a) const { return nodes[v].labels.count(a) > 0; }
  int depth(int v) const;
  // reflexive descendant order: true iff v lies in the subtree rooted at u
  bool leq(int u, int v) const;
  void validate() const;
};

// Builders ------------------------------------------------------------------

TreeModel chain(int len, const std::function<std::set<std::string>(int)>& labeling,
                std::vector<std::string> ap);
TreeModel chain(int len);
TreeModel complete_binary(int depth, std::vector<std::string> ap = {});

// Depth-bounded unfolding; nodes at the cut depth with a continuation are
// frontier-marked, children follow edge order, parallel edges spawn distinct
// children.
TreeModel unfold(const KripkeStructure& k, int depth);

// The counterexample families, as finite Kripke presentations and as
// depth-bounded unfoldings.
KripkeStructure gen_nd_kripke(int n);
KripkeStructure gen_d_kripke(int n);
KripkeStructure gen_a_kripke(int n);
KripkeStructure gen_na_kripke(int n);
TreeModel gen_nd(int n, int depth);
TreeModel gen_d(int n, int depth);
TreeModel gen_a(int n, int depth);
TreeModel gen_na(int n, int depth);

// Exhaustive enumeration ------------------------------------------------------

// Every ordered rooted unlabeled tree with <= max_nodes nodes, sizes
// ascending, deterministic order.
std::vector<TreeModel> enumerate_shapes(int max_nodes);

uint64_t labeling_count(int nodes, int ap_count);
void apply_labeling(TreeModel& shape, const std::vector<std::string>& ap, uint64_t index);

// Streams every labeled ordered tree with <= max_nodes nodes over AP exactly
// once (ordered-tree identity).
class TreeEnumerator {
 public:
  TreeEnumerator(int max_nodes, std::vector<std::string> ap);
  std::optional<TreeModel> next();
  uint64_t total() const;

 private:
  std::vector<TreeModel> shapes_;
  std::vector<std::string> ap_;
  size_t shape_ = 0;
  uint64_t labeling_ = 0;
};

// Second-order quantifier domains --------------------------------------------

// All candidate values for a second-order variable of the given kind under
// the given mode: arbitrary subsets for S (including the empty set), subtrees
// rooted anywhere for T, chains for P.  Weak keeps finite candidates (all of
// them, on a finite model); CoWeak keeps candidates touching the frontier
// when the horizon convention is enabled and nothing otherwise.
std::vector<DenSet> subtrees(const TreeModel& t, QuantKind kind, QuantMode mode, bool horizon_enabled);

// Graph-level density decision by greatest-fixpoint pruning: true iff some
// reachable sub-multigraph keeps every state able to reach a state with at
// least two retained outgoing edges.
bool density_oracle(const KripkeStructure& k);

// Path statistics on NA-family unfoldings ------------------------------------

struct PathStats {
  int n_empty = 0;  // length of the empty-labeled prefix
  int n_a = 0;      // length of the a-labeled suffix
  int d_a = 0;      // edge distance from the last node to an a-node
};

// `path` is a list of node ids, each the child of its predecessor.  Distances
// are resolved on the originating Kripke structure, so truncation never skews
// them.
PathStats path_stats(const TreeModel& t, const std::vector<int>& path);

bool compat(int h, const PathStats& a, const PathStats& b);
bool compat(const TreeModel& t, int h, const std::vector<int>& p1, const std::vector<int>& p2);

// JSON model files ------------------------------------------------------------

std::string tree_to_json(const TreeModel& t);
TreeModel tree_from_json(const std::string& text);
std::string kripke_to_json(const KripkeStructure& k);
KripkeStructure kripke_from_json(const std::string& text);

}  // namespace mtlkit
