#include "mtlkit/formula_ops.hpp"

#include <map>
#include <stdexcept>

namespace mtlkit {

// ---------------------------------------------------------------------------
// free variables
// ---------------------------------------------------------------------------

static void fv_msol(const MsolPtr& f, std::set<std::string>& fo_bound, std::set<std::string>& so_bound,
                    FreeVars& out) {
  if (!f) return;
  using K = MsolNode::Kind;
  switch (f->kind) {
    case K::Atom:
      if (!fo_bound.count(f->v1)) out.fo.insert(f->v1);
      return;
    case K::Leq:
      if (!fo_bound.count(f->v1)) out.fo.insert(f->v1);
      if (!fo_bound.count(f->v2)) out.fo.insert(f->v2);
      return;
    case K::Member:
      if (!fo_bound.count(f->v1)) out.fo.insert(f->v1);
      if (!so_bound.count(f->v2)) out.so.insert(f->v2);
      return;
    case K::Not:
      fv_msol(f->a, fo_bound, so_bound, out);
      return;
    case K::And:
    case K::Or:
    case K::Implies:
      fv_msol(f->a, fo_bound, so_bound, out);
      fv_msol(f->b, fo_bound, so_bound, out);
      return;
    case K::Exists1:
    case K::Forall1: {
      bool was = fo_bound.count(f->v1) > 0;
      fo_bound.insert(f->v1);
      fv_msol(f->a, fo_bound, so_bound, out);
      if (!was) fo_bound.erase(f->v1);
      return;
    }
    case K::Exists2:
    case K::Forall2: {
      bool was = so_bound.count(f->v2) > 0;
      so_bound.insert(f->v2);
      fv_msol(f->a, fo_bound, so_bound, out);
      if (!was) so_bound.erase(f->v2);
      return;
    }
  }
}

FreeVars free_vars(const MsolPtr& f) {
  FreeVars out;
  std::set<std::string> fo_bound, so_bound;
  fv_msol(f, fo_bound, so_bound, out);
  return out;
}

static void fv_gmc(const GmcPtr& f, std::set<std::string>& bound, FreeVars& out) {
  if (!f) return;
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
      return;
    case K::Var:
      if (!bound.count(f->name)) out.so.insert(f->name);
      return;
    case K::Not:
    case K::Diamond:
    case K::Box:
      fv_gmc(f->a, bound, out);
      return;
    case K::And:
    case K::Or:
      fv_gmc(f->a, bound, out);
      fv_gmc(f->b, bound, out);
      return;
    case K::Mu:
    case K::Nu: {
      bool was = bound.count(f->name) > 0;
      bound.insert(f->name);
      fv_gmc(f->a, bound, out);
      if (!was) bound.erase(f->name);
      return;
    }
  }
}

FreeVars free_vars(const GmcPtr& f) {
  FreeVars out;
  std::set<std::string> bound;
  fv_gmc(f, bound, out);
  return out;
}

FreeVars free_vars(const CctlStatePtr&) { return {}; }
FreeVars free_vars(const StlStatePtr&) { return {}; }

// ---------------------------------------------------------------------------
// desugar
// ---------------------------------------------------------------------------

MsolPtr desugar(const MsolPtr& f) {
  using K = MsolNode::Kind;
  switch (f->kind) {
    case K::Atom:
    case K::Leq:
    case K::Member:
      return f;
    case K::Not:
      return msol::not_(desugar(f->a));
    case K::And:
      return msol::and_(desugar(f->a), desugar(f->b));
    case K::Or:
      return msol::not_(msol::and_(msol::not_(desugar(f->a)), msol::not_(desugar(f->b))));
    case K::Implies:
      return msol::not_(msol::and_(desugar(f->a), msol::not_(desugar(f->b))));
    case K::Exists1:
      return msol::exists1(f->v1, desugar(f->a));
    case K::Forall1:
      return msol::not_(msol::exists1(f->v1, msol::not_(desugar(f->a))));
    case K::Exists2:
      return msol::exists2(f->qkind, f->v2, desugar(f->a));
    case K::Forall2:
      return msol::not_(msol::exists2(f->qkind, f->v2, msol::not_(desugar(f->a))));
  }
  throw std::logic_error("desugar: bad kind");
}

// ---------------------------------------------------------------------------
// one-step grammar check
// ---------------------------------------------------------------------------

namespace {

struct OneStepChecker {
  OneStepVerdict reject(std::vector<int> path, std::string reason) {
    OneStepVerdict v;
    v.kind = OneStepVerdict::Kind::Reject;
    v.path = std::move(path);
    v.reason = std::move(reason);
    return v;
  }

  // parity: number of enclosing negations mod 2; binder_parity: parity at the
  // binding site of each currently usable variable.  Positivity requires the
  // occurrence parity to match the binder parity.
  std::optional<OneStepVerdict> phi(const GmcPtr& f, const std::set<std::string>& zero,
                                    const std::set<std::string>& one, int parity,
                                    std::map<std::string, int>& binder_parity, std::vector<int>& path) {
    using K = GmcNode::Kind;
    switch (f->kind) {
      case K::False:
      case K::True:
      case K::Atom:
        return std::nullopt;
      case K::Var: {
        if (!zero.count(f->name))
          return reject(path, "variable " + f->name + " is not usable as a zero-step variable here");
        auto it = binder_parity.find(f->name);
        int bp = it == binder_parity.end() ? 0 : it->second;
        if (bp != parity) return reject(path, "variable " + f->name + " occurs under an odd number of negations");
        return std::nullopt;
      }
      case K::Not: {
        path.push_back(0);
        auto r = phi(f->a, zero, one, parity ^ 1, binder_parity, path);
        path.pop_back();
        return r;
      }
      case K::And:
      case K::Or: {
        path.push_back(0);
        auto r = phi(f->a, zero, one, parity, binder_parity, path);
        path.pop_back();
        if (r) return r;
        path.push_back(1);
        r = phi(f->b, zero, one, parity, binder_parity, path);
        path.pop_back();
        return r;
      }
      case K::Diamond:
      case K::Box: {
        // Under a modality the one-step variables become usable and nothing
        // else is; a second nested modality sees the empty pair.
        path.push_back(0);
        auto r = phi(f->a, one, {}, parity, binder_parity, path);
        path.pop_back();
        return r;
      }
      case K::Mu:
      case K::Nu: {
        // Fixpoint leaves of the base rule must be closed.
        FreeVars fv = free_vars(f);
        if (!fv.so.empty())
          return reject(path, "fixpoint subformula with free variable " + *fv.so.begin() +
                                  " used where a closed fixpoint formula is required");
        return theta(f, {}, {}, parity, binder_parity, path);
      }
    }
    return reject(path, "malformed formula");
  }

  std::optional<OneStepVerdict> theta(const GmcPtr& f, std::set<std::string> zero, std::set<std::string> one,
                                      int parity, std::map<std::string, int>& binder_parity,
                                      std::vector<int>& path) {
    using K = GmcNode::Kind;
    if (f->kind == K::Mu || f->kind == K::Nu) {
      zero.insert(f->name);
      one.insert(f->name);
      auto saved = binder_parity.find(f->name);
      std::optional<int> old;
      if (saved != binder_parity.end()) old = saved->second;
      binder_parity[f->name] = parity;
      path.push_back(0);
      auto r = theta(f->a, zero, one, parity, binder_parity, path);
      path.pop_back();
      if (old)
        binder_parity[f->name] = *old;
      else
        binder_parity.erase(f->name);
      return r;
    }
    return phi(f, zero, one, parity, binder_parity, path);
  }
};

}  // namespace

OneStepVerdict check_one_step(const GmcPtr& f, const VarRoleSets& roles) {
  OneStepChecker ck;
  std::map<std::string, int> binder_parity;
  std::vector<int> path;
  auto r = ck.theta(f, roles.zero, roles.one, 0, binder_parity, path);
  if (r) return *r;
  OneStepVerdict v;
  v.kind = (f->kind == GmcNode::Kind::Mu || f->kind == GmcNode::Kind::Nu) ? OneStepVerdict::Kind::InTheta
                                                                          : OneStepVerdict::Kind::InPhi;
  return v;
}

// ---------------------------------------------------------------------------
// positive normal form
// ---------------------------------------------------------------------------

bool is_pnf(const GmcPtr& f) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
    case K::Var:
      return true;
    case K::Not:
      // free variables count as atoms here; bound ones cannot be negative in
      // a well-formed fixpoint formula anyway
      return f->a->kind == K::Atom || f->a->kind == K::Var;
    case K::And:
    case K::Or:
      return is_pnf(f->a) && is_pnf(f->b);
    case K::Diamond:
    case K::Box:
    case K::Mu:
    case K::Nu:
      return is_pnf(f->a);
  }
  return false;
}

static GmcPtr pnf_pos(const GmcPtr& f, std::set<std::string>& bound);
static GmcPtr pnf_neg(const GmcPtr& f, std::set<std::string>& bound);

namespace {

struct BoundGuard {
  std::set<std::string>& bound;
  std::string name;
  bool was;
  BoundGuard(std::set<std::string>& b, std::string n) : bound(b), name(std::move(n)) {
    was = !bound.insert(name).second;
  }
  ~BoundGuard() {
    if (!was) bound.erase(name);
  }
};

}  // namespace

static GmcPtr pnf_pos(const GmcPtr& f, std::set<std::string>& bound) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
    case K::Var:
      return f;
    case K::Not:
      return pnf_neg(f->a, bound);
    case K::And:
      return gmc::and_(pnf_pos(f->a, bound), pnf_pos(f->b, bound));
    case K::Or:
      return gmc::or_(pnf_pos(f->a, bound), pnf_pos(f->b, bound));
    case K::Diamond:
      return gmc::diamond(f->grade, pnf_pos(f->a, bound));
    case K::Box:
      return gmc::box(f->grade, pnf_pos(f->a, bound));
    case K::Mu:
    case K::Nu: {
      BoundGuard g(bound, f->name);
      GmcPtr body = pnf_pos(f->a, bound);
      return f->kind == K::Mu ? gmc::mu(f->name, body) : gmc::nu(f->name, body);
    }
  }
  throw std::logic_error("pnf: bad kind");
}

static GmcPtr pnf_neg(const GmcPtr& f, std::set<std::string>& bound) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
      return gmc::tt();
    case K::True:
      return gmc::ff();
    case K::Atom:
      return gmc::not_(f);
    case K::Var:
      // free variables negate like atoms; a bound one under odd negation is
      // a non-monotone binder
      if (bound.count(f->name))
        throw std::invalid_argument("pnf: variable " + f->name + " under an odd number of negations");
      return gmc::not_(f);
    case K::Not:
      return pnf_pos(f->a, bound);
    case K::And:
      return gmc::or_(pnf_neg(f->a, bound), pnf_neg(f->b, bound));
    case K::Or:
      return gmc::and_(pnf_neg(f->a, bound), pnf_neg(f->b, bound));
    case K::Diamond:
      return gmc::box(f->grade, pnf_neg(f->a, bound));
    case K::Box:
      return gmc::diamond(f->grade, pnf_neg(f->a, bound));
    case K::Mu:
    case K::Nu: {
      BoundGuard g(bound, f->name);
      GmcPtr body = pnf_neg(subst_var(f->a, f->name, gmc::not_(gmc::var(f->name))), bound);
      return f->kind == K::Mu ? gmc::nu(f->name, body) : gmc::mu(f->name, body);
    }
  }
  throw std::logic_error("pnf: bad kind");
}

GmcPtr pnf(const GmcPtr& f) {
  std::set<std::string> bound;
  return pnf_pos(f, bound);
}

// ---------------------------------------------------------------------------
// alternation freeness
// ---------------------------------------------------------------------------

static bool af_walk(const GmcPtr& f, std::map<std::string, GmcNode::Kind>& binder_kind) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
    case K::Var:
      return true;
    case K::Not:
    case K::Diamond:
    case K::Box:
      return af_walk(f->a, binder_kind);
    case K::And:
    case K::Or:
      return af_walk(f->a, binder_kind) && af_walk(f->b, binder_kind);
    case K::Mu:
    case K::Nu: {
      K dual = f->kind == K::Mu ? K::Nu : K::Mu;
      for (const auto& v : free_vars(f).so) {
        auto it = binder_kind.find(v);
        if (it != binder_kind.end() && it->second == dual) return false;
      }
      auto saved = binder_kind.find(f->name);
      std::optional<GmcNode::Kind> old;
      if (saved != binder_kind.end()) old = saved->second;
      binder_kind[f->name] = f->kind;
      bool ok = af_walk(f->a, binder_kind);
      if (old)
        binder_kind[f->name] = *old;
      else
        binder_kind.erase(f->name);
      return ok;
    }
  }
  return false;
}

bool check_alternation_free(const GmcPtr& f) {
  if (!is_pnf(f)) throw std::invalid_argument("check_alternation_free: input not in positive normal form");
  std::map<std::string, GmcNode::Kind> binder_kind;
  return af_walk(f, binder_kind);
}

// ---------------------------------------------------------------------------
// substitution
// ---------------------------------------------------------------------------

std::set<std::string> all_var_names(const GmcPtr& f) {
  std::set<std::string> out;
  if (!f) return out;
  using K = GmcNode::Kind;
  if (f->kind == K::Var || f->kind == K::Mu || f->kind == K::Nu) out.insert(f->name);
  if (f->a)
    for (const auto& v : all_var_names(f->a)) out.insert(v);
  if (f->b)
    for (const auto& v : all_var_names(f->b)) out.insert(v);
  return out;
}

static GmcPtr subst_walk(const GmcPtr& f, const std::string& x, const GmcPtr& value,
                         const std::set<std::string>& value_free, FreshVarPool& pool) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
      return f;
    case K::Var:
      return f->name == x ? value : f;
    case K::Not:
      return gmc::not_(subst_walk(f->a, x, value, value_free, pool));
    case K::And:
      return gmc::and_(subst_walk(f->a, x, value, value_free, pool),
                       subst_walk(f->b, x, value, value_free, pool));
    case K::Or:
      return gmc::or_(subst_walk(f->a, x, value, value_free, pool),
                      subst_walk(f->b, x, value, value_free, pool));
    case K::Diamond:
      return gmc::diamond(f->grade, subst_walk(f->a, x, value, value_free, pool));
    case K::Box:
      return gmc::box(f->grade, subst_walk(f->a, x, value, value_free, pool));
    case K::Mu:
    case K::Nu: {
      if (f->name == x) return f;  // x bound below, nothing to do
      GmcPtr body = f->a;
      std::string name = f->name;
      if (value_free.count(name) && free_vars(f).so.count(x)) {
        // the binder would capture a free variable of the replacement
        std::string renamed = pool.fresh(name);
        body = subst_walk(body, name, gmc::var(renamed), {}, pool);
        name = renamed;
      }
      GmcPtr nb = subst_walk(body, x, value, value_free, pool);
      return f->kind == K::Mu ? gmc::mu(name, nb) : gmc::nu(name, nb);
    }
  }
  throw std::logic_error("subst_var: bad kind");
}

GmcPtr subst_var(const GmcPtr& f, const std::string& x, const GmcPtr& value) {
  FreshVarPool pool(all_var_names(f));
  auto vf = free_vars(value).so;
  pool.reserve(vf);
  return subst_walk(f, x, value, vf, pool);
}

// ---------------------------------------------------------------------------
// time-zero suppression
// ---------------------------------------------------------------------------

GmcPtr suppress(const GmcPtr& f, const std::string& x, SuppressDir dir) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
    case K::Diamond:
    case K::Box:
      return f;  // modal subformulas are untouched
    case K::Var:
      if (f->name != x) return f;
      return dir == SuppressDir::Down ? gmc::ff() : gmc::tt();
    case K::Not:
      return gmc::not_(suppress(f->a, x, dir));
    case K::And:
      return gmc::and_(suppress(f->a, x, dir), suppress(f->b, x, dir));
    case K::Or:
      return gmc::or_(suppress(f->a, x, dir), suppress(f->b, x, dir));
    case K::Mu:
    case K::Nu: {
      if (f->name == x) return f;
      GmcPtr body = suppress(f->a, x, dir);
      return f->kind == K::Mu ? gmc::mu(f->name, body) : gmc::nu(f->name, body);
    }
  }
  throw std::logic_error("suppress: bad kind");
}

// ---------------------------------------------------------------------------
// fixpoint block merging
// ---------------------------------------------------------------------------

static std::pair<std::string, GmcPtr> merge_block(const GmcPtr& f, GmcNode::Kind head, const char* what) {
  if (f->kind != head) throw std::invalid_argument(std::string("merge: input is not ") + what + "-headed");
  std::vector<std::string> vars;
  GmcPtr body = f;
  while (body->kind == head) {
    vars.push_back(body->name);
    body = body->a;
  }
  FreshVarPool pool(all_var_names(f));
  std::string y = pool.fresh("Y");
  for (const auto& v : vars) body = subst_var(body, v, gmc::var(y));
  return {y, body};
}

std::pair<std::string, GmcPtr> merge_lfps(const GmcPtr& f) {
  return merge_block(f, GmcNode::Kind::Mu, "mu");
}

std::pair<std::string, GmcPtr> merge_gfps(const GmcPtr& f) {
  return merge_block(f, GmcNode::Kind::Nu, "nu");
}

// ---------------------------------------------------------------------------
// counting-CTL* sizes and balancing
// ---------------------------------------------------------------------------

uint64_t cctl_size(const CctlStatePtr& f) {
  using K = CctlState::Kind;
  switch (f->kind) {
    case K::True:
    case K::Atom:
      return 1;
    case K::Not:
      return 1 + cctl_size(f->a);
    case K::And:
      return 1 + cctl_size(f->a) + cctl_size(f->b);
    case K::Exists:
    case K::Forall:
      return 1 + cctl_size(f->p);
    case K::Count:
      return uint64_t(f->grade) + 1 + cctl_size(f->a);
  }
  throw std::logic_error("cctl_size: bad kind");
}

uint64_t cctl_size(const CctlPathPtr& f) {
  using K = CctlPath::Kind;
  switch (f->kind) {
    case K::State:
      return cctl_size(f->s);
    case K::Not:
    case K::Next:
      return 1 + cctl_size(f->a);
    case K::And:
    case K::Until:
      return 1 + cctl_size(f->a) + cctl_size(f->b);
  }
  throw std::logic_error("cctl_size: bad kind");
}

bool is_balanced(const CctlStatePtr& f) {
  using K = CctlState::Kind;
  switch (f->kind) {
    case K::True:
    case K::Atom:
      return true;
    case K::Not:
    case K::Count:
      return is_balanced(f->a);
    case K::And:
      return is_balanced(f->a) && is_balanced(f->b);
    case K::Exists:
    case K::Forall: {
      const CctlPathPtr& body = f->p;
      if (body->kind != CctlPath::Kind::And) return false;
      if (cctl_size(body->a) != cctl_size(body->b)) return false;
      return is_balanced(body->a) && is_balanced(body->b);
    }
  }
  return false;
}

bool is_balanced(const CctlPathPtr& f) {
  using K = CctlPath::Kind;
  switch (f->kind) {
    case K::State:
      return is_balanced(f->s);
    case K::Not:
    case K::Next:
      return is_balanced(f->a);
    case K::And:
      return is_balanced(f->a) && is_balanced(f->b);
    case K::Until:
      return cctl_size(f->a) == cctl_size(f->b) && is_balanced(f->a) && is_balanced(f->b);
  }
  return false;
}

namespace {

// tt-conjuncts grow a side by 2; when the two sides disagree mod 2 one side
// first gets this even-size tautology (|.| = 6), the only way to change
// parity without changing meaning.
CctlStatePtr even_taut() {
  auto ff = cctl::not_(cctl::tt());
  return cctl::not_(cctl::and_(ff, ff));
}

CctlPathPtr pad_path(CctlPathPtr f, uint64_t target) {
  uint64_t s = cctl_size(f);
  if ((target - s) % 2 != 0) {
    f = cctl::pand(f, cctl::embed(even_taut()));
    s = cctl_size(f);
  }
  while (s < target) {
    f = cctl::pand(f, cctl::embed(cctl::tt()));
    s += 2;
  }
  return f;
}

std::pair<CctlPathPtr, CctlPathPtr> equalize(CctlPathPtr a, CctlPathPtr b) {
  uint64_t sa = cctl_size(a), sb = cctl_size(b);
  if (sa == sb) return {a, b};
  if (sa < sb) {
    a = pad_path(a, sb);
    // the parity fix may overshoot; pad the other side up to match
    b = pad_path(b, cctl_size(a));
  } else {
    b = pad_path(b, sa);
    a = pad_path(a, cctl_size(b));
  }
  return {a, b};
}

}  // namespace

CctlPathPtr balance(const CctlPathPtr& f) {
  using K = CctlPath::Kind;
  switch (f->kind) {
    case K::State:
      return cctl::embed(balance(f->s));
    case K::Not:
      return cctl::pnot(balance(f->a));
    case K::Next:
      return cctl::next(balance(f->a));
    case K::And:
      return cctl::pand(balance(f->a), balance(f->b));
    case K::Until: {
      auto [a, b] = equalize(balance(f->a), balance(f->b));
      return cctl::until(a, b);
    }
  }
  throw std::logic_error("balance: bad kind");
}

CctlStatePtr balance(const CctlStatePtr& f) {
  using K = CctlState::Kind;
  switch (f->kind) {
    case K::True:
    case K::Atom:
      return f;
    case K::Not:
      return cctl::not_(balance(f->a));
    case K::Count:
      return cctl::count(f->grade, balance(f->a));
    case K::And:
      return cctl::and_(balance(f->a), balance(f->b));
    case K::Exists:
    case K::Forall: {
      CctlPathPtr body = balance(f->p);
      if (body->kind != CctlPath::Kind::And) body = cctl::pand(body, cctl::embed(cctl::tt()));
      auto [a, b] = equalize(body->a, body->b);
      body = cctl::pand(a, b);
      return f->kind == K::Exists ? cctl::exists(body) : cctl::forall(body);
    }
  }
  throw std::logic_error("balance: bad kind");
}

// ---------------------------------------------------------------------------
// fresh names
// ---------------------------------------------------------------------------

std::string FreshVarPool::fresh(const std::string& base) {
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

static void collect_msol_names(const MsolPtr& f, std::set<std::string>& fo, std::set<std::string>& so) {
  if (!f) return;
  using K = MsolNode::Kind;
  switch (f->kind) {
    case K::Atom:
      fo.insert(f->v1);
      break;
    case K::Leq:
      fo.insert(f->v1);
      fo.insert(f->v2);
      break;
    case K::Member:
      fo.insert(f->v1);
      so.insert(f->v2);
      break;
    case K::Exists1:
    case K::Forall1:
      fo.insert(f->v1);
      break;
    case K::Exists2:
    case K::Forall2:
      so.insert(f->v2);
      break;
    default:
      break;
  }
  collect_msol_names(f->a, fo, so);
  collect_msol_names(f->b, fo, so);
}

std::set<std::string> all_fo_names(const MsolPtr& f) {
  std::set<std::string> fo, so;
  collect_msol_names(f, fo, so);
  return fo;
}

std::set<std::string> all_so_names(const MsolPtr& f) {
  std::set<std::string> fo, so;
  collect_msol_names(f, fo, so);
  return so;
}

}  // namespace mtlkit
