#include "mtlkit/eval.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "mtlkit/formula_ops.hpp"

namespace mtlkit {

PathDomain path_domain_from_name(const std::string& name) {
  if (name == "all") return PathDomain::All;
  if (name == "finite") return PathDomain::Finite;
  if (name == "maximal") return PathDomain::Maximal;
  if (name == "infinite-approx") return PathDomain::InfiniteApprox;
  throw std::invalid_argument("unknown path domain: " + name);
}

const char* path_domain_name(PathDomain d) {
  switch (d) {
    case PathDomain::All: return "all";
    case PathDomain::Finite: return "finite";
    case PathDomain::Maximal: return "maximal";
    case PathDomain::InfiniteApprox: return "infinite-approx";
  }
  return "?";
}

void EvalConfig::validate() const {
  if (path_domain == PathDomain::InfiniteApprox && !horizon_enabled)
    throw std::invalid_argument("infinite-approx path domain requires the horizon convention");
}

// ---------------------------------------------------------------------------
// MSOL: compiled form
// ---------------------------------------------------------------------------

namespace {

struct Dim {
  bool is_so;
  int slot;
  bool operator<(const Dim& o) const { return std::tie(is_so, slot) < std::tie(o.is_so, o.slot); }
  bool operator==(const Dim& o) const { return is_so == o.is_so && slot == o.slot; }
};

std::vector<Dim> merge_dims(const std::vector<Dim>& a, const std::vector<Dim>& b) {
  std::vector<Dim> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Dim> without(const std::vector<Dim>& a, Dim d) {
  std::vector<Dim> out;
  for (const Dim& x : a)
    if (!(x == d)) out.push_back(x);
  return out;
}

}  // namespace

struct MsolCompiled {
  struct Node {
    MsolNode::Kind kind;
    int a = -1, b = -1;      // child node indices
    int fo1 = -1, fo2 = -1;  // first-order slots of v1/v2
    int so = -1;             // second-order slot (Member operand or binder)
    std::string ap;
    QuantKind qkind = QuantKind::Set;
    std::vector<Dim> dims;  // free non-fixed slots, sorted
  };
  struct FoSlot {
    bool fixed = false;  // value supplied by Valuation1
    std::string name;    // for fixed slots and the anchor
  };
  struct SoSlot {
    bool fixed = false;       // value supplied by Valuation2
    QuantKind kind = QuantKind::Set;  // candidate domain for bound slots
    std::string name;
  };
  std::vector<Node> nodes;  // postorder; root last
  std::vector<FoSlot> fo_slots;
  std::vector<SoSlot> so_slots;
  int anchor_slot = -1;
  size_t max_table = size_t(1) << 24;
};

namespace {

class Compiler {
 public:
  Compiler(const std::optional<std::string>& anchor, const std::vector<std::string>& fixed_fo,
           const std::vector<std::string>& fixed_so) {
    if (anchor) {
      out_.anchor_slot = new_fo_slot(false, *anchor);
      env_fo_[*anchor].push_back(out_.anchor_slot);
    }
    for (const auto& v : fixed_fo) {
      if (anchor && v == *anchor) continue;
      int s = new_fo_slot(true, v);
      env_fo_[v].push_back(s);
    }
    for (const auto& v : fixed_so) {
      int s = new_so_slot(true, QuantKind::Set, v);
      env_so_[v].push_back(s);
    }
  }

  MsolCompiled take(const MsolPtr& f) {
    walk(f);
    return std::move(out_);
  }

 private:
  int new_fo_slot(bool fixed, std::string name) {
    out_.fo_slots.push_back({fixed, std::move(name)});
    return static_cast<int>(out_.fo_slots.size()) - 1;
  }
  int new_so_slot(bool fixed, QuantKind kind, std::string name) {
    out_.so_slots.push_back({fixed, kind, std::move(name)});
    return static_cast<int>(out_.so_slots.size()) - 1;
  }

  int fo_slot(const std::string& name) {
    auto it = env_fo_.find(name);
    if (it == env_fo_.end() || it->second.empty())
      throw std::invalid_argument("unbound first-order variable: " + name);
    return it->second.back();
  }
  int so_slot(const std::string& name) {
    auto it = env_so_.find(name);
    if (it == env_so_.end() || it->second.empty())
      throw std::invalid_argument("unbound second-order variable: " + name);
    return it->second.back();
  }

  Dim fo_dim(int slot) const { return {false, slot}; }
  Dim so_dim(int slot) const { return {true, slot}; }

  bool slot_in_dims(const MsolCompiled::Node& n, Dim d) {
    return std::binary_search(n.dims.begin(), n.dims.end(), d);
  }

  int walk(const MsolPtr& f) {
    using K = MsolNode::Kind;
    MsolCompiled::Node n;
    n.kind = f->kind;
    switch (f->kind) {
      case K::Atom: {
        n.ap = f->ap;
        n.fo1 = fo_slot(f->v1);
        if (!out_.fo_slots[n.fo1].fixed) n.dims = {fo_dim(n.fo1)};
        break;
      }
      case K::Leq: {
        n.fo1 = fo_slot(f->v1);
        n.fo2 = fo_slot(f->v2);
        std::vector<Dim> d;
        if (!out_.fo_slots[n.fo1].fixed) d.push_back(fo_dim(n.fo1));
        if (!out_.fo_slots[n.fo2].fixed && n.fo2 != n.fo1) d.push_back(fo_dim(n.fo2));
        std::sort(d.begin(), d.end());
        n.dims = std::move(d);
        break;
      }
      case K::Member: {
        n.fo1 = fo_slot(f->v1);
        n.so = so_slot(f->v2);
        std::vector<Dim> d;
        if (!out_.fo_slots[n.fo1].fixed) d.push_back(fo_dim(n.fo1));
        if (!out_.so_slots[n.so].fixed) d.push_back(so_dim(n.so));
        std::sort(d.begin(), d.end());
        n.dims = std::move(d);
        break;
      }
      case K::Not: {
        n.a = walk(f->a);
        n.dims = out_.nodes[n.a].dims;
        break;
      }
      case K::And:
      case K::Or:
      case K::Implies: {
        n.a = walk(f->a);
        n.b = walk(f->b);
        n.dims = merge_dims(out_.nodes[n.a].dims, out_.nodes[n.b].dims);
        break;
      }
      case K::Exists1:
      case K::Forall1: {
        int s = new_fo_slot(false, f->v1);
        env_fo_[f->v1].push_back(s);
        n.a = walk(f->a);
        env_fo_[f->v1].pop_back();
        n.fo1 = s;
        n.dims = without(out_.nodes[n.a].dims, fo_dim(s));
        break;
      }
      case K::Exists2:
      case K::Forall2: {
        int s = new_so_slot(false, f->qkind, f->v2);
        env_so_[f->v2].push_back(s);
        n.a = walk(f->a);
        env_so_[f->v2].pop_back();
        n.so = s;
        n.qkind = f->qkind;
        n.dims = without(out_.nodes[n.a].dims, so_dim(s));
        break;
      }
    }
    out_.nodes.push_back(std::move(n));
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  MsolCompiled out_;
  std::map<std::string, std::vector<int>> env_fo_;
  std::map<std::string, std::vector<int>> env_so_;
};

}  // namespace

MsolCompiledPtr msol_compile(const MsolPtr& f, const std::optional<std::string>& anchor,
                             const std::vector<std::string>& fixed_fo,
                             const std::vector<std::string>& fixed_so) {
  Compiler c(anchor, fixed_fo, fixed_so);
  return std::make_shared<const MsolCompiled>(c.take(f));
}

// ---------------------------------------------------------------------------
// MSOL: evaluation context
// ---------------------------------------------------------------------------

MsolContext::MsolContext(const TreeModel& t, const EvalConfig& cfg) : model_(&t), cfg_(cfg), n_(t.size()) {
  cfg.validate();
  t.validate();
  desc_.assign(n_, DenSet(n_));
  // postorder accumulation of descendant sets
  std::vector<int> order;
  order.reserve(n_);
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int c : t.nodes[v].children) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    desc_[v].set(v);
    for (int c : t.nodes[v].children) desc_[v] |= desc_[c];
  }
  relabel(t);
}

void MsolContext::relabel(const TreeModel& t) {
  if (t.size() != n_) throw std::invalid_argument("relabel: shape mismatch");
  model_ = &t;
  apmask_.clear();
  for (int v = 0; v < n_; ++v)
    for (const auto& a : t.nodes[v].labels) {
      auto [it, fresh] = apmask_.try_emplace(a, DenSet(n_));
      it->second.set(v);
    }
  DenSet frontier(n_);
  if (cfg_.horizon_enabled)
    for (int v = 0; v < n_; ++v)
      if (t.nodes[v].frontier) frontier.set(v);
  apmask_[kFrontierAtom] = frontier;
  // CoWeak candidate domains depend on frontier marks
  if (cfg_.mode == QuantMode::CoWeak)
    for (auto& c : cand_) c.reset();
}

const std::vector<DenSet>& MsolContext::candidates(QuantKind kind) {
  auto& slot = cand_[static_cast<int>(kind)];
  if (!slot) slot = subtrees(*model_, kind, cfg_.mode, cfg_.horizon_enabled);
  return *slot;
}

DenSet MsolContext::ap_mask(const std::string& name) const {
  auto it = apmask_.find(name);
  if (it != apmask_.end()) return it->second;
  return DenSet(n_);
}

// ---------------------------------------------------------------------------
// MSOL: table evaluation
// ---------------------------------------------------------------------------

namespace {

struct Table {
  std::vector<Dim> dims;
  std::vector<uint32_t> sizes;
  std::vector<uint8_t> data;

  size_t total() const {
    size_t t = 1;
    for (uint32_t s : sizes) t *= s;
    return t;
  }
};

struct Odometer {
  std::vector<uint32_t> digits;
  const std::vector<uint32_t>* sizes;

  explicit Odometer(const std::vector<uint32_t>& sz) : digits(sz.size(), 0), sizes(&sz) {}
  bool step() {
    for (size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < (*sizes)[i]) return true;
      digits[i] = 0;
    }
    return false;
  }
};

class TableEval {
 public:
  TableEval(const MsolCompiled& c, MsolContext& ctx, const Valuation1& v1, const Valuation2& v2)
      : c_(c), ctx_(ctx) {
    fo_fixed_.assign(c.fo_slots.size(), -1);
    so_fixed_.assign(c.so_slots.size(), nullptr);
    for (size_t s = 0; s < c.fo_slots.size(); ++s) {
      if (!c.fo_slots[s].fixed) continue;
      auto it = v1.at.find(c.fo_slots[s].name);
      if (it == v1.at.end())
        throw std::invalid_argument("valuation missing first-order variable " + c.fo_slots[s].name);
      if (it->second < 0 || it->second >= ctx.size())
        throw std::invalid_argument("valuation node out of range for " + c.fo_slots[s].name);
      fo_fixed_[s] = it->second;
    }
    for (size_t s = 0; s < c.so_slots.size(); ++s) {
      if (!c.so_slots[s].fixed) continue;
      auto it = v2.at.find(c.so_slots[s].name);
      if (it == v2.at.end())
        throw std::invalid_argument("valuation missing second-order variable " + c.so_slots[s].name);
      so_fixed_[s] = &it->second;
    }
  }

  Table run() {
    tables_.resize(c_.nodes.size());
    for (size_t i = 0; i < c_.nodes.size(); ++i) compute(static_cast<int>(i));
    return std::move(tables_.back());
  }

 private:
  uint32_t dim_size(Dim d) {
    if (d.is_so) return static_cast<uint32_t>(ctx_.candidates(c_.so_slots[d.slot].kind).size());
    return static_cast<uint32_t>(ctx_.size());
  }

  void init_table(Table& t, const std::vector<Dim>& dims) {
    t.dims = dims;
    t.sizes.clear();
    for (Dim d : dims) t.sizes.push_back(dim_size(d));
    size_t total = t.total();
    if (total > c_.max_table)
      throw std::runtime_error("model too large for brute-force MSOL evaluation (table overflow)");
    t.data.assign(total, 0);
  }

  // index strides of `inner` dims within `outer` iteration order
  std::vector<size_t> strides_for(const Table& inner, const std::vector<Dim>& outer) {
    std::vector<size_t> inner_strides(inner.dims.size());
    size_t s = 1;
    for (size_t i = inner.dims.size(); i-- > 0;) {
      inner_strides[i] = s;
      s *= inner.sizes[i];
    }
    std::vector<size_t> out(outer.size(), 0);
    for (size_t i = 0; i < inner.dims.size(); ++i) {
      auto it = std::find(outer.begin(), outer.end(), inner.dims[i]);
      out[it - outer.begin()] = inner_strides[i];
    }
    return out;
  }

  int fo_value(int slot, const MsolCompiled::Node& n, const Odometer& od) {
    if (c_.fo_slots[slot].fixed) return fo_fixed_[slot];
    Dim d{false, slot};
    for (size_t i = 0; i < n.dims.size(); ++i)
      if (n.dims[i] == d) return static_cast<int>(od.digits[i]);
    throw std::logic_error("fo slot not in dims");
  }

  const DenSet* so_value(int slot, const MsolCompiled::Node& n, const Odometer& od) {
    if (c_.so_slots[slot].fixed) return so_fixed_[slot];
    Dim d{true, slot};
    for (size_t i = 0; i < n.dims.size(); ++i)
      if (n.dims[i] == d) return &ctx_.candidates(c_.so_slots[slot].kind)[od.digits[i]];
    throw std::logic_error("so slot not in dims");
  }

  void compute(int ni) {
    using K = MsolNode::Kind;
    const MsolCompiled::Node& n = c_.nodes[ni];
    Table& out = tables_[ni];
    switch (n.kind) {
      case K::Atom: {
        init_table(out, n.dims);
        DenSet mask = ctx_.ap_mask(n.ap);
        if (!out.data.empty()) {
          Odometer od(out.sizes);
          size_t i = 0;
          do {
            out.data[i++] = mask.test(fo_value(n.fo1, n, od));
          } while (od.step());
        }
        break;
      }
      case K::Leq: {
        init_table(out, n.dims);
        if (!out.data.empty()) {
          Odometer od(out.sizes);
          size_t i = 0;
          do {
            out.data[i++] = ctx_.leq(fo_value(n.fo1, n, od), fo_value(n.fo2, n, od));
          } while (od.step());
        }
        break;
      }
      case K::Member: {
        init_table(out, n.dims);
        if (!out.data.empty()) {
          Odometer od(out.sizes);
          size_t i = 0;
          do {
            out.data[i++] = so_value(n.so, n, od)->test(fo_value(n.fo1, n, od));
          } while (od.step());
        }
        break;
      }
      case K::Not: {
        Table& ca = tables_[n.a];
        out.dims = ca.dims;
        out.sizes = ca.sizes;
        out.data.resize(ca.data.size());
        for (size_t i = 0; i < ca.data.size(); ++i) out.data[i] = !ca.data[i];
        tables_[n.a] = Table{};
        break;
      }
      case K::And:
      case K::Or:
      case K::Implies: {
        init_table(out, n.dims);
        Table& ca = tables_[n.a];
        Table& cb = tables_[n.b];
        auto sa = strides_for(ca, out.dims);
        auto sb = strides_for(cb, out.dims);
        if (!out.data.empty()) {
          Odometer od(out.sizes);
          size_t i = 0;
          do {
            size_t ia = 0, ib = 0;
            for (size_t d = 0; d < out.dims.size(); ++d) {
              ia += od.digits[d] * sa[d];
              ib += od.digits[d] * sb[d];
            }
            uint8_t va = ca.data[ia], vb = cb.data[ib];
            out.data[i++] =
                n.kind == K::And ? (va && vb) : (n.kind == K::Or ? (va || vb) : (!va || vb));
          } while (od.step());
        }
        tables_[n.a] = Table{};
        tables_[n.b] = Table{};
        break;
      }
      case K::Exists1:
      case K::Forall1:
      case K::Exists2:
      case K::Forall2: {
        bool is_exists = n.kind == K::Exists1 || n.kind == K::Exists2;
        bool is_so = n.kind == K::Exists2 || n.kind == K::Forall2;
        Dim bound{is_so, is_so ? n.so : n.fo1};
        uint32_t domain = dim_size(bound);
        Table& ca = tables_[n.a];
        auto pos = std::find(ca.dims.begin(), ca.dims.end(), bound);
        if (pos == ca.dims.end()) {
          // bound variable unused in the body
          if (domain == 0) {
            init_table(out, n.dims);
            std::fill(out.data.begin(), out.data.end(), is_exists ? 0 : 1);
          } else {
            out = std::move(ca);
          }
          tables_[n.a] = Table{};
          break;
        }
        size_t axis = pos - ca.dims.begin();
        init_table(out, n.dims);
        if (domain == 0) {
          std::fill(out.data.begin(), out.data.end(), is_exists ? 0 : 1);
          tables_[n.a] = Table{};
          break;
        }
        // child strides with the bound axis separated out
        std::vector<size_t> cstr(ca.dims.size());
        {
          size_t s = 1;
          for (size_t i = ca.dims.size(); i-- > 0;) {
            cstr[i] = s;
            s *= ca.sizes[i];
          }
        }
        std::vector<size_t> outer_strides;
        for (size_t i = 0; i < ca.dims.size(); ++i)
          if (i != axis) outer_strides.push_back(cstr[i]);
        size_t bound_stride = cstr[axis];
        if (!out.data.empty()) {
          Odometer od(out.sizes);
          size_t i = 0;
          do {
            size_t base = 0;
            for (size_t d = 0; d < out.dims.size(); ++d) base += od.digits[d] * outer_strides[d];
            uint8_t acc = is_exists ? 0 : 1;
            for (uint32_t v = 0; v < domain; ++v) {
              uint8_t val = ca.data[base + v * bound_stride];
              if (is_exists && val) {
                acc = 1;
                break;
              }
              if (!is_exists && !val) {
                acc = 0;
                break;
              }
            }
            out.data[i++] = acc;
          } while (od.step());
        }
        tables_[n.a] = Table{};
        break;
      }
    }
  }

  const MsolCompiled& c_;
  MsolContext& ctx_;
  std::vector<int> fo_fixed_;
  std::vector<const DenSet*> so_fixed_;
  std::vector<Table> tables_;
};

}  // namespace

bool eval_msol_compiled(const MsolCompiled& c, MsolContext& ctx, const Valuation1& v1,
                        const Valuation2& v2) {
  if (c.anchor_slot >= 0) throw std::invalid_argument("eval: formula compiled with an anchor");
  TableEval ev(c, ctx, v1, v2);
  Table t = ev.run();
  if (!t.dims.empty()) throw std::logic_error("eval: residual free dimensions");
  return t.data[0] != 0;
}

DenSet denot_msol_compiled(const MsolCompiled& c, MsolContext& ctx, const Valuation1& v1,
                           const Valuation2& v2) {
  if (c.anchor_slot < 0) throw std::invalid_argument("denot: formula compiled without an anchor");
  TableEval ev(c, ctx, v1, v2);
  Table t = ev.run();
  DenSet out(ctx.size());
  if (t.dims.empty()) {
    if (t.data[0]) out = DenSet::full(ctx.size());
    return out;
  }
  if (t.dims.size() != 1 || t.dims[0].is_so || t.dims[0].slot != c.anchor_slot)
    throw std::logic_error("denot: unexpected residual dimensions");
  for (int v = 0; v < ctx.size(); ++v)
    if (t.data[v]) out.set(v);
  return out;
}

bool eval_msol(const MsolPtr& f, const TreeModel& t, const Valuation1& v1, const Valuation2& v2,
               const EvalConfig& cfg) {
  FreeVars fv = free_vars(f);
  std::vector<std::string> fo(fv.fo.begin(), fv.fo.end());
  std::vector<std::string> so(fv.so.begin(), fv.so.end());
  auto c = msol_compile(f, std::nullopt, fo, so);
  MsolContext ctx(t, cfg);
  return eval_msol_compiled(*c, ctx, v1, v2);
}

DenSet denot_msol(const MsolPtr& f, const std::string& x, const TreeModel& t, const Valuation2& v2,
                  const EvalConfig& cfg) {
  FreeVars fv = free_vars(f);
  for (const auto& v : fv.fo)
    if (v != x) throw std::invalid_argument("denot_msol: extra free first-order variable " + v);
  std::vector<std::string> so(fv.so.begin(), fv.so.end());
  auto c = msol_compile(f, x, {}, so);
  MsolContext ctx(t, cfg);
  return denot_msol_compiled(*c, ctx, Valuation1{}, v2);
}

// ---------------------------------------------------------------------------
// graded mu-calculus
// ---------------------------------------------------------------------------

namespace {

struct GraphSem {
  int n = 0;
  std::vector<std::vector<int>> post;  // successors with multiplicity
  std::map<std::string, DenSet> atoms;
};

GraphSem graph_of(const TreeModel& t, const EvalConfig& cfg) {
  GraphSem g;
  g.n = t.size();
  g.post.resize(g.n);
  for (int v = 0; v < g.n; ++v) g.post[v] = t.nodes[v].children;
  for (int v = 0; v < g.n; ++v)
    for (const auto& a : t.nodes[v].labels) {
      auto [it, fresh] = g.atoms.try_emplace(a, DenSet(g.n));
      it->second.set(v);
    }
  if (cfg.horizon_enabled) {
    DenSet f(g.n);
    for (int v = 0; v < g.n; ++v)
      if (t.nodes[v].frontier) f.set(v);
    g.atoms[kFrontierAtom] = f;
  }
  return g;
}

GraphSem graph_of(const KripkeStructure& k) {
  GraphSem g;
  g.n = k.size();
  g.post = k.successors();
  for (int s = 0; s < g.n; ++s)
    for (const auto& a : k.states[s].labels) {
      auto [it, fresh] = g.atoms.try_emplace(a, DenSet(g.n));
      it->second.set(s);
    }
  return g;
}

// bound fixpoint variables must occur positively
void check_bound_positive(const GmcPtr& f, int parity, std::map<std::string, int>& binder_parity) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
      return;
    case K::Var: {
      auto it = binder_parity.find(f->name);
      if (it != binder_parity.end() && it->second != parity)
        throw std::invalid_argument("eval_gmc: variable " + f->name + " occurs under negation");
      return;
    }
    case K::Not:
      check_bound_positive(f->a, parity ^ 1, binder_parity);
      return;
    case K::And:
    case K::Or:
      check_bound_positive(f->a, parity, binder_parity);
      check_bound_positive(f->b, parity, binder_parity);
      return;
    case K::Diamond:
    case K::Box:
      check_bound_positive(f->a, parity, binder_parity);
      return;
    case K::Mu:
    case K::Nu: {
      auto saved = binder_parity.find(f->name);
      std::optional<int> old;
      if (saved != binder_parity.end()) old = saved->second;
      binder_parity[f->name] = parity;
      check_bound_positive(f->a, parity, binder_parity);
      if (old)
        binder_parity[f->name] = *old;
      else
        binder_parity.erase(f->name);
      return;
    }
  }
}

DenSet gmc_rec(const GmcPtr& f, const GraphSem& g, std::map<std::string, DenSet>& env,
               EvalStats* stats) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
      return DenSet(g.n);
    case K::True:
      return DenSet::full(g.n);
    case K::Atom: {
      auto it = g.atoms.find(f->name);
      return it == g.atoms.end() ? DenSet(g.n) : it->second;
    }
    case K::Var: {
      auto it = env.find(f->name);
      if (it == env.end()) throw std::invalid_argument("eval_gmc: unassigned variable " + f->name);
      return it->second;
    }
    case K::Not:
      return gmc_rec(f->a, g, env, stats).complement();
    case K::And:
      return gmc_rec(f->a, g, env, stats) & gmc_rec(f->b, g, env, stats);
    case K::Or:
      return gmc_rec(f->a, g, env, stats) | gmc_rec(f->b, g, env, stats);
    case K::Diamond: {
      DenSet inner = gmc_rec(f->a, g, env, stats);
      DenSet out(g.n);
      for (int v = 0; v < g.n; ++v) {
        uint32_t cnt = 0;
        for (int c : g.post[v])
          if (inner.test(c) && ++cnt >= f->grade) break;
        if (cnt >= f->grade) out.set(v);
      }
      return out;
    }
    case K::Box: {
      DenSet inner = gmc_rec(f->a, g, env, stats);
      DenSet out(g.n);
      for (int v = 0; v < g.n; ++v) {
        uint32_t cnt = 0;
        for (int c : g.post[v])
          if (!inner.test(c) && ++cnt >= f->grade) break;
        if (cnt < f->grade) out.set(v);
      }
      return out;
    }
    case K::Mu:
    case K::Nu: {
      DenSet cur = f->kind == K::Mu ? DenSet(g.n) : DenSet::full(g.n);
      int rounds = 0;
      while (true) {
        auto saved = env.find(f->name);
        std::optional<DenSet> old;
        if (saved != env.end()) old = saved->second;
        env[f->name] = cur;
        DenSet next = gmc_rec(f->a, g, env, stats);
        if (old)
          env[f->name] = *old;
        else
          env.erase(f->name);
        ++rounds;
        if (next == cur) break;
        cur = next;
      }
      if (stats && rounds > stats->max_fix_rounds) stats->max_fix_rounds = rounds;
      return cur;
    }
  }
  throw std::logic_error("eval_gmc: bad kind");
}

DenSet gmc_run(const GmcPtr& f, const GraphSem& g, const GmcAssignment& asg, EvalStats* stats) {
  std::map<std::string, int> parity;
  check_bound_positive(f, 0, parity);
  std::map<std::string, DenSet> env;
  for (const auto& [k, v] : asg.at) {
    if (v.universe() != g.n) throw std::invalid_argument("eval_gmc: assignment universe mismatch");
    env[k] = v;
  }
  return gmc_rec(f, g, env, stats);
}

}  // namespace

DenSet eval_gmc(const GmcPtr& f, const TreeModel& t, const GmcAssignment& asg, const EvalConfig& cfg,
                EvalStats* stats) {
  return gmc_run(f, graph_of(t, cfg), asg, stats);
}

DenSet eval_gmc_graph(const GmcPtr& f, const KripkeStructure& k, const GmcAssignment& asg,
                      EvalStats* stats) {
  return gmc_run(f, graph_of(k), asg, stats);
}

// ---------------------------------------------------------------------------
// counting CTL*
// ---------------------------------------------------------------------------

namespace {

struct CctlEval {
  const TreeModel& t;
  const EvalConfig& cfg;
  std::map<std::pair<const CctlState*, int>, bool> memo;

  bool state(const CctlStatePtr& f, int node) {
    auto key = std::make_pair(f.get(), node);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool r = state_raw(f, node);
    memo.emplace(key, r);
    return r;
  }

  bool state_raw(const CctlStatePtr& f, int node) {
    using K = CctlState::Kind;
    switch (f->kind) {
      case K::True:
        return true;
      case K::Atom:
        if (f->ap == kFrontierAtom) return cfg.horizon_enabled && t.nodes[node].frontier;
        return t.has_label(node, f->ap);
      case K::Not:
        return !state(f->a, node);
      case K::And:
        return state(f->a, node) && state(f->b, node);
      case K::Count: {
        uint32_t cnt = 0;
        for (int c : t.nodes[node].children)
          if (state(f->a, c) && ++cnt >= f->grade) break;
        return cnt >= f->grade;
      }
      case K::Exists:
        return !for_paths(node, [&](const std::vector<int>& pi) { return !path(f->p, pi, 0); });
      case K::Forall:
        return for_paths(node, [&](const std::vector<int>& pi) { return path(f->p, pi, 0); });
    }
    throw std::logic_error("eval_cctl: bad kind");
  }

  // calls fn on every path of the configured domain starting at `from`;
  // stops early and returns false as soon as fn does
  bool for_paths(int from, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> pi{from};
    return paths_rec(pi, fn);
  }

  bool paths_rec(std::vector<int>& pi, const std::function<bool(const std::vector<int>&)>& fn) {
    int last = pi.back();
    bool emit = false;
    switch (cfg.path_domain) {
      case PathDomain::All:
      case PathDomain::Finite:
        emit = true;
        break;
      case PathDomain::Maximal:
        emit = t.is_leaf(last);
        break;
      case PathDomain::InfiniteApprox:
        emit = t.nodes[last].frontier;
        break;
    }
    if (emit && !fn(pi)) return false;
    for (int c : t.nodes[last].children) {
      pi.push_back(c);
      bool ok = paths_rec(pi, fn);
      pi.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  bool path(const CctlPathPtr& f, const std::vector<int>& pi, int i) {
    using K = CctlPath::Kind;
    switch (f->kind) {
      case K::State:
        return state(f->s, pi[i]);
      case K::Not:
        return !path(f->a, pi, i);
      case K::And:
        return path(f->a, pi, i) && path(f->b, pi, i);
      case K::Next:
        return i + 1 < static_cast<int>(pi.size()) && path(f->a, pi, i + 1);
      case K::Until: {
        for (int j = i; j < static_cast<int>(pi.size()); ++j) {
          if (path(f->b, pi, j)) {
            bool all = true;
            for (int k = i; k < j && all; ++k) all = path(f->a, pi, k);
            if (all) return true;
          }
        }
        return false;
      }
    }
    throw std::logic_error("eval_cctl: bad kind");
  }
};

}  // namespace

bool eval_cctl(const CctlStatePtr& f, const TreeModel& t, int node, const EvalConfig& cfg) {
  cfg.validate();
  if (node < 0 || node >= t.size()) throw std::invalid_argument("eval_cctl: node out of range");
  CctlEval ev{t, cfg, {}};
  return ev.state(f, node);
}

bool eval_cctl_path(const CctlPathPtr& f, const TreeModel& t, const std::vector<int>& path, int pos,
                    const EvalConfig& cfg) {
  cfg.validate();
  if (path.empty()) throw std::invalid_argument("eval_cctl_path: empty path");
  for (size_t i = 0; i < path.size(); ++i) {
    if (path[i] < 0 || path[i] >= t.size()) throw std::invalid_argument("eval_cctl_path: node out of range");
    if (i > 0 && t.nodes[path[i]].parent != path[i - 1])
      throw std::invalid_argument("eval_cctl_path: not a child-chain");
  }
  if (pos < 0 || pos >= static_cast<int>(path.size()))
    throw std::invalid_argument("eval_cctl_path: position out of range");
  CctlEval ev{t, cfg, {}};
  return ev.path(f, path, pos);
}

DenSet cctl_denot(const CctlStatePtr& f, const TreeModel& t, const EvalConfig& cfg) {
  cfg.validate();
  CctlEval ev{t, cfg, {}};
  DenSet out(t.size());
  for (int v = 0; v < t.size(); ++v)
    if (ev.state(f, v)) out.set(v);
  return out;
}

// ---------------------------------------------------------------------------
// STL*
// ---------------------------------------------------------------------------

namespace {

struct StlEval {
  const TreeModel& t;
  const EvalConfig& cfg;
  int n;
  std::vector<uint64_t> desc;       // descendant masks (reflexive)
  std::vector<uint64_t> childmask;  // children masks
  uint64_t frontier = 0;
  std::map<std::tuple<const StlState*, uint64_t, int>, bool> memo;

  StlEval(const TreeModel& tree, const EvalConfig& config) : t(tree), cfg(config), n(tree.size()) {
    if (n > 60) throw std::invalid_argument("eval_stl: model too large for substructure enumeration");
    desc.assign(n, 0);
    childmask.assign(n, 0);
    std::vector<int> order;
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int c : t.nodes[v].children) stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      desc[v] |= uint64_t(1) << v;
      for (int c : t.nodes[v].children) {
        childmask[v] |= uint64_t(1) << c;
        desc[v] |= desc[c];
      }
    }
    for (int v = 0; v < n; ++v)
      if (t.nodes[v].frontier) frontier |= uint64_t(1) << v;
  }

  static bool bit(uint64_t m, int v) { return (m >> v) & 1; }

  bool nonblocking_ok(uint64_t c) const {
    if (cfg.relax_nonblocking) return true;
    uint64_t rest = c;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if ((childmask[v] & c) == 0 && !bit(frontier, v)) return false;
    }
    return true;
  }

  // inner is a W-subtree of outer: for every inner node in W, all its
  // children within outer stay in inner
  bool preserving(uint64_t inner, uint64_t outer, uint64_t w) const {
    uint64_t rest = inner & w;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (childmask[v] & outer & ~inner) return false;
    }
    return true;
  }

  // all connected sets rooted at r within `allowed`
  void rooted_sets(int r, uint64_t allowed, std::vector<uint64_t>& out) const {
    std::vector<int> kids;
    uint64_t km = childmask[r] & allowed;
    while (km) {
      kids.push_back(std::countr_zero(km));
      km &= km - 1;
    }
    std::vector<uint64_t> acc{uint64_t(1) << r};
    for (int c : kids) {
      std::vector<uint64_t> sub;
      rooted_sets(c, allowed, sub);
      std::vector<uint64_t> next;
      next.reserve(acc.size() * (sub.size() + 1));
      for (uint64_t a : acc) {
        next.push_back(a);
        for (uint64_t s : sub) next.push_back(a | s);
      }
      acc = std::move(next);
    }
    for (uint64_t a : acc) out.push_back(a);
  }

  uint64_t chi_denot(const StlStatePtr& chi, uint64_t s_mask, int r) {
    uint64_t w = 0;
    uint64_t rest = s_mask;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (state(chi, s_mask & desc[v], v)) w |= uint64_t(1) << v;
    }
    (void)r;
    return w;
  }

  bool state(const StlStatePtr& f, uint64_t s_mask, int r) {
    auto key = std::make_tuple(f.get(), s_mask, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = state_raw(f, s_mask, r);
    memo.emplace(key, v);
    return v;
  }

  bool state_raw(const StlStatePtr& f, uint64_t s_mask, int r) {
    using K = StlState::Kind;
    switch (f->kind) {
      case K::True:
        return true;
      case K::Atom:
        if (f->ap == kFrontierAtom) return cfg.horizon_enabled && t.nodes[r].frontier;
        return t.has_label(r, f->ap);
      case K::Not:
        return !state(f->a, s_mask, r);
      case K::And:
        return state(f->a, s_mask, r) && state(f->b, s_mask, r);
      case K::Count: {
        uint32_t cnt = 0;
        uint64_t rest = childmask[r] & s_mask;
        while (rest && cnt < f->grade) {
          int c = std::countr_zero(rest);
          rest &= rest - 1;
          if (state(f->a, s_mask & desc[c], c)) ++cnt;
        }
        return cnt >= f->grade;
      }
      case K::Exists:
        return !for_paths(s_mask, r, [&](const std::vector<int>& pi) { return !path(f->p, s_mask, pi, 0); });
      case K::Forall:
        return for_paths(s_mask, r, [&](const std::vector<int>& pi) { return path(f->p, s_mask, pi, 0); });
      case K::UU:
      case K::RR: {
        uint64_t w = chi_denot(f->chi, s_mask, r);
        std::vector<uint64_t> cands;
        rooted_sets(r, s_mask, cands);
        std::vector<uint64_t> subs;  // strict W-subtrees of the current tree
        for (uint64_t c : cands)
          if (c != s_mask && preserving(c, s_mask, w) && nonblocking_ok(c)) subs.push_back(c);
        auto between_ok = [&](uint64_t tp, const StlStatePtr& g) {
          // trees strictly between tp and s_mask in the W-subtree order
          for (uint64_t c : cands) {
            if (c == tp || c == s_mask) continue;
            if ((c & tp) != tp) continue;
            if (!preserving(tp, c, w) || !preserving(c, s_mask, w)) continue;
            if (!nonblocking_ok(c)) continue;
            if (!state(g, c, r)) return false;
          }
          return true;
        };
        if (f->kind == K::UU) {
          for (uint64_t tp : subs)
            if (state(f->b, tp, r) && between_ok(tp, f->a)) return true;
          return false;
        }
        for (uint64_t tp : subs) {
          if (state(f->b, tp, r)) continue;
          bool found = false;
          for (uint64_t c : cands) {
            if (c == tp || c == s_mask) continue;
            if ((c & tp) != tp) continue;
            if (!preserving(tp, c, w) || !preserving(c, s_mask, w)) continue;
            if (!nonblocking_ok(c)) continue;
            if (state(f->a, c, r)) {
              found = true;
              break;
            }
          }
          if (!found) return false;
        }
        return true;
      }
      case K::SS:
      case K::BB: {
        uint64_t w = chi_denot(f->chi, s_mask, r);
        std::vector<uint64_t> cands;
        rooted_sets(r, desc[r], cands);
        std::vector<uint64_t> supers;  // strict W-supertrees of the current tree
        for (uint64_t c : cands)
          if (c != s_mask && (c & s_mask) == s_mask && preserving(s_mask, c, w) && nonblocking_ok(c))
            supers.push_back(c);
        auto between_ok = [&](uint64_t tp, const StlStatePtr& g) {
          for (uint64_t c : cands) {
            if (c == tp || c == s_mask) continue;
            if ((c & s_mask) != s_mask || (tp & c) != c) continue;
            if (!preserving(c, tp, w) || !preserving(s_mask, c, w)) continue;
            if (!nonblocking_ok(c)) continue;
            if (!state(g, c, r)) return false;
          }
          return true;
        };
        if (f->kind == K::SS) {
          for (uint64_t tp : supers)
            if (state(f->b, tp, r) && between_ok(tp, f->a)) return true;
          return false;
        }
        for (uint64_t tp : supers) {
          if (state(f->b, tp, r)) continue;
          bool found = false;
          for (uint64_t c : cands) {
            if (c == tp || c == s_mask) continue;
            if ((c & s_mask) != s_mask || (tp & c) != c) continue;
            if (!preserving(c, tp, w) || !preserving(s_mask, c, w)) continue;
            if (!nonblocking_ok(c)) continue;
            if (state(f->a, c, r)) {
              found = true;
              break;
            }
          }
          if (!found) return false;
        }
        return true;
      }
    }
    throw std::logic_error("eval_stl: bad kind");
  }

  bool for_paths(uint64_t s_mask, int from, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> pi{from};
    return paths_rec(s_mask, pi, fn);
  }

  bool paths_rec(uint64_t s_mask, std::vector<int>& pi, const std::function<bool(const std::vector<int>&)>& fn) {
    int last = pi.back();
    uint64_t kids = childmask[last] & s_mask;
    bool emit = false;
    switch (cfg.path_domain) {
      case PathDomain::All:
      case PathDomain::Finite:
        emit = true;
        break;
      case PathDomain::Maximal:
        emit = kids == 0;
        break;
      case PathDomain::InfiniteApprox:
        emit = bit(frontier, last);
        break;
    }
    if (emit && !fn(pi)) return false;
    while (kids) {
      int c = std::countr_zero(kids);
      kids &= kids - 1;
      pi.push_back(c);
      bool ok = paths_rec(s_mask, pi, fn);
      pi.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  bool path(const StlPathPtr& f, uint64_t s_mask, const std::vector<int>& pi, int i) {
    using K = StlPath::Kind;
    switch (f->kind) {
      case K::State:
        return state(f->s, s_mask & desc[pi[i]], pi[i]);
      case K::Not:
        return !path(f->a, s_mask, pi, i);
      case K::And:
        return path(f->a, s_mask, pi, i) && path(f->b, s_mask, pi, i);
      case K::Next:
        return i + 1 < static_cast<int>(pi.size()) && path(f->a, s_mask, pi, i + 1);
      case K::Until: {
        for (int j = i; j < static_cast<int>(pi.size()); ++j) {
          if (path(f->b, s_mask, pi, j)) {
            bool all = true;
            for (int k = i; k < j && all; ++k) all = path(f->a, s_mask, pi, k);
            if (all) return true;
          }
        }
        return false;
      }
    }
    throw std::logic_error("eval_stl: bad kind");
  }
};

uint64_t denset_to_mask(const DenSet& s) {
  uint64_t m = 0;
  for (int v : s.elements()) m |= uint64_t(1) << v;
  return m;
}

}  // namespace

bool eval_stl(const StlStatePtr& f, const TreeModel& star, const DenSet& sub, int root,
              const EvalConfig& cfg) {
  cfg.validate();
  if (root < 0 || root >= star.size() || !sub.test(root))
    throw std::invalid_argument("eval_stl: root not in the substructure");
  StlEval ev(star, cfg);
  uint64_t mask = denset_to_mask(sub);
  // the substructure must be a subtree rooted at `root`
  uint64_t rest = mask;
  while (rest) {
    int v = std::countr_zero(rest);
    rest &= rest - 1;
    if (v == root) continue;
    int p = star.nodes[v].parent;
    if (p < 0 || !StlEval::bit(mask, p) || !StlEval::bit(ev.desc[root], v))
      throw std::invalid_argument("eval_stl: substructure is not a subtree rooted at the given node");
  }
  return ev.state(f, mask, root);
}

DenSet stl_denot(const StlStatePtr& f, const TreeModel& star, const EvalConfig& cfg) {
  cfg.validate();
  StlEval ev(star, cfg);
  DenSet out(star.size());
  for (int v = 0; v < star.size(); ++v)
    if (ev.state(f, ev.desc[v], v)) out.set(v);
  return out;
}

// ---------------------------------------------------------------------------
// assignment machinery
// ---------------------------------------------------------------------------

DenSet restrict_component(const DenSet& w_set, int w, const TreeModel& t) {
  if (w < 0 || w >= t.size() || !w_set.test(w))
    throw std::invalid_argument("restrict_component: node not in the set");
  DenSet out(t.size());
  out.set(w);
  std::vector<int> stack{w};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int c : t.nodes[v].children)
      if (w_set.test(c) && !out.test(c)) {
        out.set(c);
        stack.push_back(c);
      }
  }
  return out;
}

DenSet post_set(const DenSet& w_set, const TreeModel& t) {
  DenSet out(t.size());
  for (int v : w_set.elements())
    for (int c : t.nodes[v].children) out.set(c);
  return out;
}

GmcAssignment restrict_assignment(const GmcAssignment& asg, const DenSet& w_set,
                                  const VarRoleSets& roles, const TreeModel& t) {
  DenSet post = post_set(w_set, t);
  GmcAssignment out;
  for (const auto& x : roles.zero) {
    auto it = asg.at.find(x);
    if (it == asg.at.end()) throw std::invalid_argument("restrict_assignment: missing variable " + x);
    out.at[x] = roles.one.count(x) ? (it->second & (w_set | post)) : (it->second & w_set);
  }
  for (const auto& x : roles.one) {
    if (out.at.count(x)) continue;
    auto it = asg.at.find(x);
    if (it == asg.at.end()) throw std::invalid_argument("restrict_assignment: missing variable " + x);
    out.at[x] = it->second & post;
  }
  return out;
}

bool one_step_sim(const GmcAssignment& a, const GmcAssignment& b, const DenSet& w_set,
                  const VarRoleSets& roles, const TreeModel& t) {
  DenSet post = post_set(w_set, t);
  auto get = [](const GmcAssignment& m, const std::string& x) -> const DenSet& {
    auto it = m.at.find(x);
    if (it == m.at.end()) throw std::invalid_argument("one_step_sim: missing variable " + x);
    return it->second;
  };
  for (const auto& x : roles.zero)
    if (!(get(a, x) & w_set).subset_of(get(b, x))) return false;
  for (const auto& x : roles.one)
    if (!(get(a, x) & post).subset_of(get(b, x))) return false;
  return true;
}

}  // namespace mtlkit
