#include "mtlkit/translate.hpp"

#include <stdexcept>

#include "mtlkit/eval.hpp"
#include "mtlkit/formula_ops.hpp"

namespace mtlkit {

using namespace msol;

// ---------------------------------------------------------------------------
// stdlib
// ---------------------------------------------------------------------------

namespace {

// forall x. (x in X -> body)
MsolPtr forall_in(const std::string& x, const std::string& X, MsolPtr body) {
  return forall1(x, implies(member(x, X), std::move(body)));
}

MsolPtr exists_in(const std::string& x, const std::string& X, MsolPtr body) {
  return exists1(x, and_(member(x, X), std::move(body)));
}

}  // namespace

MsolPtr stdlib_child(const std::string& x, const std::string& y) {
  FreshVarPool pool({x, y});
  std::string z = pool.fresh("z");
  return and_(lt(x, y), not_(exists1(z, and_(lt(x, z), lt(z, y)))));
}

MsolPtr stdlib_path(const std::string& X) {
  FreshVarPool pool;
  std::string x = pool.fresh("x"), y = pool.fresh("y"), z = pool.fresh("z");
  MsolPtr ordered = or_(leq(x, y), leq(y, x));
  MsolPtr convex = implies(and_(lt(x, y), not_(stdlib_child(x, y))),
                           exists_in(z, X, and_(lt(x, z), lt(z, y))));
  return forall_in(x, X, forall_in(y, X, and_(ordered, convex)));
}

MsolPtr stdlib_path_f(const std::string& X) {
  FreshVarPool pool;
  std::string x = pool.fresh("x");
  return and_(stdlib_path(X), not_(exists_in(x, X, atom(kFrontierAtom, x))));
}

MsolPtr stdlib_path_inf(const std::string& X) {
  FreshVarPool pool;
  std::string x = pool.fresh("x");
  return and_(stdlib_path(X), exists_in(x, X, atom(kFrontierAtom, x)));
}

MsolPtr stdlib_tree(const std::string& X) {
  FreshVarPool pool;
  std::string x = pool.fresh("x"), y = pool.fresh("y"), z = pool.fresh("z");
  MsolPtr rooted = exists_in(x, X, forall_in(y, X, leq(x, y)));
  MsolPtr convex = forall_in(
      x, X,
      forall_in(y, X,
                implies(and_(lt(x, y), not_(stdlib_child(x, y))),
                        exists_in(z, X, and_(lt(x, z), lt(z, y))))));
  return and_(rooted, convex);
}

MsolPtr stdlib_subseteq(const std::string& X, const std::string& Y) {
  FreshVarPool pool;
  std::string x = pool.fresh("x");
  return forall1(x, implies(member(x, X), member(x, Y)));
}

MsolPtr stdlib_fin_mso(const std::string& X) {
  FreshVarPool pool({X});
  std::string Y = pool.fresh("Y"), Z = pool.fresh("Z");
  return exists2(QuantKind::Set, Y,
                 and_(and_(stdlib_tree(Y), stdlib_subseteq(X, Y)),
                      not_(exists2(QuantKind::Set, Z,
                                   and_(stdlib_subseteq(Z, Y), stdlib_path_inf(Z))))));
}

MsolPtr stdlib_fin_mtl_subtree(const std::string& X) {
  FreshVarPool pool({X});
  std::string Y = pool.fresh("Y");
  return not_(exists2(QuantKind::Tree, Y, and_(stdlib_subseteq(Y, X), stdlib_path_inf(Y))));
}

MsolPtr stdlib_nonblocking(const std::string& X) {
  FreshVarPool pool;
  std::string x = pool.fresh("x"), y = pool.fresh("y");
  MsolPtr has_child = exists1(y, and_(member(y, X), stdlib_child(x, y)));
  return forall_in(x, X, or_(has_child, atom(kFrontierAtom, x)));
}

MsolPtr stdlib_maxsubtree(const std::string& Y, const std::string& X, const std::string& v) {
  FreshVarPool pool({v});
  std::string y = pool.fresh("y"), z = pool.fresh("z");
  MsolPtr characteristic =
      and_(and_(member(y, X), leq(v, y)),
           forall1(z, implies(and_(leq(v, z), lt(z, y)), member(z, X))));
  MsolPtr both = and_(implies(member(y, Y), characteristic), implies(characteristic, member(y, Y)));
  return and_(and_(stdlib_subseteq(Y, X), member(v, Y)), forall1(y, both));
}

MsolPtr stdlib_density_mtl() {
  std::string X = "X", x = "x", x1 = "x1", x2 = "x2";
  MsolPtr incomparable = and_(not_(leq(x1, x2)), not_(leq(x2, x1)));
  MsolPtr body = exists_in(
      x1, X, exists_in(x2, X, and_(and_(lt(x, x1), lt(x, x2)), incomparable)));
  return exists2(QuantKind::Tree, X, forall_in(x, X, body));
}

MsolPtr stdlib_inf_branching_wmtl() {
  std::string x = "x", y = "y", X = "X";
  return not_(forall1(
      x, exists2(QuantKind::Tree, X, forall1(y, implies(stdlib_child(x, y), member(y, X))))));
}

MsolPtr stdlib_finitely_branching_cowmso(const std::string& Z) {
  FreshVarPool pool({Z});
  std::string x = pool.fresh("x"), y = pool.fresh("y"), X = pool.fresh("X");
  MsolPtr shallow = forall_in(y, X, or_(eq(y, x), stdlib_child(x, y)));
  return not_(exists1(
      x, exists2(QuantKind::Set, X, and_(and_(stdlib_subseteq(X, Z), member(x, X)), shallow))));
}

MsolPtr stdlib_theta_cow(const std::string& x, const std::string& X) {
  FreshVarPool pool({x, X});
  std::string y = pool.fresh("y"), z = pool.fresh("z"), Y = pool.fresh("Y");
  // no node of X has infinitely many X-children: under the co-weak reading a
  // subtree of depth one below y can only be chosen when it is infinite
  MsolPtr shallow = forall_in(z, Y, or_(eq(z, y), stdlib_child(y, z)));
  MsolPtr fin_branching = not_(exists_in(
      y, X, exists2(QuantKind::Tree, Y, and_(stdlib_subseteq(Y, X), shallow))));
  // every infinite path of X visits a strict descendant of x
  MsolPtr spine = forall2(QuantKind::Tree, Y,
                          implies(and_(stdlib_path(Y), stdlib_subseteq(Y, X)),
                                  exists_in(y, Y, lt(x, y))));
  return and_(and_(member(x, X), fin_branching), spine);
}

MsolPtr stdlib_a_acceptance_wmtl() {
  std::string X = "X", r = "r", w = "w", x = "x", y = "y";
  MsolPtr contains_root = exists1(r, and_(forall1(w, leq(r, w)), member(r, X)));
  MsolPtr is_leaf = not_(exists1(y, and_(member(y, X), stdlib_child(x, y))));
  MsolPtr leaves_a = forall_in(x, X, implies(is_leaf, atom("a", x)));
  MsolPtr full = forall_in(
      x, X, implies(not_(is_leaf), forall1(y, implies(stdlib_child(x, y), member(y, X)))));
  return exists2(QuantKind::Tree, X, and_(and_(contains_root, leaves_a), full));
}

GmcPtr stdlib_phi_den_gmc() {
  using namespace gmc;
  return nu("X", mu("Y", or_(diamond(2, var("X")), diamond(1, var("Y")))));
}

GmcPtr stdlib_af_a_gmc() {
  using namespace gmc;
  return mu("X", or_(atom("a"), box(1, var("X"))));
}

StdlibName stdlib_name_from_string(const std::string& s) {
  if (s == "child") return StdlibName::Child;
  if (s == "path") return StdlibName::Path;
  if (s == "path_f") return StdlibName::PathF;
  if (s == "path_inf") return StdlibName::PathInf;
  if (s == "tree") return StdlibName::Tree;
  if (s == "subseteq") return StdlibName::Subseteq;
  if (s == "fin_mso") return StdlibName::FinMso;
  if (s == "fin_mtl_subtree") return StdlibName::FinMtlSubtree;
  if (s == "nonblocking") return StdlibName::Nonblocking;
  if (s == "maxsubtree") return StdlibName::Maxsubtree;
  if (s == "density_mtl") return StdlibName::DensityMtl;
  if (s == "inf_branching_wmtl") return StdlibName::InfBranchingWmtl;
  if (s == "finitely_branching_cowmso") return StdlibName::FinitelyBranchingCowmso;
  if (s == "theta_cow") return StdlibName::ThetaCow;
  if (s == "a_acceptance_wmtl") return StdlibName::AAcceptanceWmtl;
  if (s == "phi_den_gmc") return StdlibName::PhiDenGmc;
  if (s == "af_a_gmc") return StdlibName::AfAGmc;
  throw std::invalid_argument("unknown stdlib formula: " + s);
}

StdlibFormula stdlib(StdlibName name, const std::vector<std::string>& args) {
  auto need = [&](size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("stdlib: expected " + std::to_string(n) + " argument(s), got " +
                                  std::to_string(args.size()));
  };
  StdlibFormula out;
  switch (name) {
    case StdlibName::Child: need(2); out.msol = stdlib_child(args[0], args[1]); break;
    case StdlibName::Path: need(1); out.msol = stdlib_path(args[0]); break;
    case StdlibName::PathF: need(1); out.msol = stdlib_path_f(args[0]); break;
    case StdlibName::PathInf: need(1); out.msol = stdlib_path_inf(args[0]); break;
    case StdlibName::Tree: need(1); out.msol = stdlib_tree(args[0]); break;
    case StdlibName::Subseteq: need(2); out.msol = stdlib_subseteq(args[0], args[1]); break;
    case StdlibName::FinMso: need(1); out.msol = stdlib_fin_mso(args[0]); break;
    case StdlibName::FinMtlSubtree: need(1); out.msol = stdlib_fin_mtl_subtree(args[0]); break;
    case StdlibName::Nonblocking: need(1); out.msol = stdlib_nonblocking(args[0]); break;
    case StdlibName::Maxsubtree: need(3); out.msol = stdlib_maxsubtree(args[0], args[1], args[2]); break;
    case StdlibName::DensityMtl: need(0); out.msol = stdlib_density_mtl(); break;
    case StdlibName::InfBranchingWmtl: need(0); out.msol = stdlib_inf_branching_wmtl(); break;
    case StdlibName::FinitelyBranchingCowmso:
      need(1);
      out.msol = stdlib_finitely_branching_cowmso(args[0]);
      break;
    case StdlibName::ThetaCow: need(2); out.msol = stdlib_theta_cow(args[0], args[1]); break;
    case StdlibName::AAcceptanceWmtl: need(0); out.msol = stdlib_a_acceptance_wmtl(); break;
    case StdlibName::PhiDenGmc: need(0); out.gmc = stdlib_phi_den_gmc(); break;
    case StdlibName::AfAGmc: need(0); out.gmc = stdlib_af_a_gmc(); break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// one-step graded mu-calculus translations (general and alternation-free)
// ---------------------------------------------------------------------------

namespace {

class GmcTranslator {
 public:
  GmcTranslator(const GmcPtr& whole, const std::string& anchor, bool weak) : weak_(weak) {
    fo_.reserve(anchor);
    so_.reserve(all_var_names(whole));
  }

  MsolPtr tr(const GmcPtr& f, const std::string& x) {
    using K = GmcNode::Kind;
    switch (f->kind) {
      case K::True:
        return tt(x);
      case K::False:
        return ff(x);
      case K::Atom:
        return atom(f->name, x);
      case K::Var:
        return member(x, f->name);
      case K::Not:
        return not_(tr(f->a, x));
      case K::And:
        return and_(tr(f->a, x), tr(f->b, x));
      case K::Or:
        return or_(tr(f->a, x), tr(f->b, x));
      case K::Diamond:
        return graded_children(f->grade, x, [&](const std::string& y) { return tr(f->a, y); });
      case K::Box:
        // all but fewer than k children satisfy = not (at least k fail)
        return not_(graded_children(f->grade, x,
                                    [&](const std::string& y) { return not_(tr(f->a, y)); }));
      case K::Mu:
      case K::Nu:
        return weak_ ? tr_fix_weak(f, x) : tr_fix_general(f, x);
    }
    throw std::logic_error("osgmc translation: bad kind");
  }

  std::vector<std::string> fresh_used;

 private:
  // exists k pairwise-distinct children of x each satisfying `body`
  MsolPtr graded_children(uint32_t k, const std::string& x,
                          const std::function<MsolPtr(const std::string&)>& body) {
    if (k == 0) return tt(x);
    std::vector<std::string> ys;
    for (uint32_t i = 0; i < k; ++i) ys.push_back(fresh_fo("y"));
    std::vector<MsolPtr> conj;
    for (uint32_t i = 0; i < k; ++i)
      for (uint32_t j = i + 1; j < k; ++j) conj.push_back(not_(eq(ys[i], ys[j])));
    for (uint32_t i = 0; i < k; ++i) {
      conj.push_back(stdlib_child(x, ys[i]));
      conj.push_back(body(ys[i]));
    }
    MsolPtr out = and_all(conj);
    for (uint32_t i = k; i-- > 0;) out = exists1(ys[i], out);
    return out;
  }

  MsolPtr tr_fix_general(const GmcPtr& f, const std::string& x) {
    if (f->kind == GmcNode::Kind::Nu) {
      std::string xp = fresh_fo("x");
      MsolPtr per_node = forall1(xp, implies(member(xp, f->name), tr(f->a, xp)));
      return exists2(QuantKind::Tree, f->name, and_(member(x, f->name), per_node));
    }
    // mu via the duality through the greatest fixpoint
    GmcPtr dual_body = pnf(gmc::not_(subst_var(f->a, f->name, gmc::not_(gmc::var(f->name)))));
    return not_(tr_fix_general(gmc::nu(f->name, dual_body), x));
  }

  MsolPtr tr_fix_weak(const GmcPtr& f, const std::string& x) {
    if (f->kind == GmcNode::Kind::Mu) {
      auto [yvar, merged] = merge_lfps(f);
      so_.reserve(yvar);
      GmcPtr suppressed = suppress(merged, yvar, SuppressDir::Down);
      std::string w = fresh_so("X");
      std::string xp = fresh_fo("x");
      MsolPtr witness = exists2(
          QuantKind::Tree, yvar,
          and_(stdlib_maxsubtree(yvar, w, xp), tr(suppressed, xp)));
      MsolPtr per_node = forall1(xp, implies(member(xp, w), witness));
      return exists2(QuantKind::Tree, w, and_(member(x, w), per_node));
    }
    // a block of greatest fixpoints through the duality
    std::vector<std::string> vars;
    GmcPtr body = f;
    while (body->kind == GmcNode::Kind::Nu) {
      vars.push_back(body->name);
      body = body->a;
    }
    for (const auto& v : vars) body = subst_var(body, v, gmc::not_(gmc::var(v)));
    body = pnf(gmc::not_(body));
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = gmc::mu(*it, body);
    return not_(tr_fix_weak(body, x));
  }

  std::string fresh_fo(const std::string& base) {
    std::string v = fo_.fresh(base);
    fresh_used.push_back(v);
    return v;
  }
  std::string fresh_so(const std::string& base) {
    std::string v = so_.fresh(base);
    fresh_used.push_back(v);
    return v;
  }

  bool weak_;
  FreshVarPool fo_;
  FreshVarPool so_;
};

}  // namespace

TranslationOutput osgmc_to_mtl(const GmcPtr& f, const std::string& anchor, const VarRoleSets& roles) {
  OneStepVerdict v = check_one_step(f, roles);
  if (!v.accepted()) throw std::invalid_argument("osgmc_to_mtl: not a one-step formula: " + v.reason);
  GmcTranslator tr(f, anchor, /*weak=*/false);
  TranslationOutput out;
  out.formula = tr.tr(f, anchor);
  out.anchor = anchor;
  out.fresh_vars = std::move(tr.fresh_used);
  out.mode_requirement = QuantMode::Full;
  return out;
}

TranslationOutput osafgmc_to_wmtl(const GmcPtr& f, const std::string& anchor, const VarRoleSets& roles) {
  OneStepVerdict v = check_one_step(f, roles);
  if (!v.accepted()) throw std::invalid_argument("osafgmc_to_wmtl: not a one-step formula: " + v.reason);
  GmcPtr normal = pnf(f);
  if (!check_alternation_free(normal))
    throw std::invalid_argument("osafgmc_to_wmtl: formula is not alternation-free");
  GmcTranslator tr(normal, anchor, /*weak=*/true);
  TranslationOutput out;
  out.formula = tr.tr(normal, anchor);
  out.anchor = anchor;
  out.fresh_vars = std::move(tr.fresh_used);
  out.mode_requirement = QuantMode::Weak;
  return out;
}

// ---------------------------------------------------------------------------
// counting CTL* into MPL
// ---------------------------------------------------------------------------

namespace {

class CctlTranslator {
 public:
  explicit CctlTranslator(const std::string& anchor) { fo_.reserve(anchor); }

  MsolPtr state(const CctlStatePtr& f, const std::string& x) {
    using K = CctlState::Kind;
    switch (f->kind) {
      case K::True:
        return tt(x);
      case K::Atom:
        return atom(f->ap, x);
      case K::Not:
        return not_(state(f->a, x));
      case K::And:
        return and_(state(f->a, x), state(f->b, x));
      case K::Count: {
        if (f->grade == 0) return tt(x);
        std::vector<std::string> ys;
        for (uint32_t i = 0; i < f->grade; ++i) ys.push_back(fresh_fo("y"));
        std::vector<MsolPtr> conj;
        for (uint32_t i = 0; i < f->grade; ++i)
          for (uint32_t j = i + 1; j < f->grade; ++j) conj.push_back(not_(eq(ys[i], ys[j])));
        for (uint32_t i = 0; i < f->grade; ++i) {
          conj.push_back(stdlib_child(x, ys[i]));
          conj.push_back(state(f->a, ys[i]));
        }
        MsolPtr out = and_all(conj);
        for (uint32_t i = f->grade; i-- > 0;) out = exists1(ys[i], out);
        return out;
      }
      case K::Exists:
        return exists_path(f->p, x, /*negate_body=*/false);
      case K::Forall:
        return not_(exists_path(f->p, x, /*negate_body=*/true));
    }
    throw std::logic_error("cctl translation: bad kind");
  }

  std::vector<std::string> fresh_used;

 private:
  MsolPtr exists_path(const CctlPathPtr& psi, const std::string& x, bool negate_body) {
    std::string pv = fresh_so("P");
    std::string z = fresh_fo("z");
    MsolPtr starts_at = and_(member(x, pv), forall1(z, implies(member(z, pv), leq(x, z))));
    MsolPtr body = path(psi, pv, x);
    if (negate_body) body = not_(body);
    return exists2(QuantKind::Path, pv, and_(starts_at, body));
  }

  MsolPtr path(const CctlPathPtr& f, const std::string& pv, const std::string& p) {
    using K = CctlPath::Kind;
    switch (f->kind) {
      case K::State:
        return state(f->s, p);
      case K::Not:
        return not_(path(f->a, pv, p));
      case K::And:
        return and_(path(f->a, pv, p), path(f->b, pv, p));
      case K::Next: {
        std::string q = fresh_fo("p");
        return exists1(q, and_(and_(member(q, pv), stdlib_child(p, q)), path(f->a, pv, q)));
      }
      case K::Until: {
        std::string q = fresh_fo("p");
        std::string r = fresh_fo("p");
        MsolPtr before = forall1(
            r, implies(and_(and_(member(r, pv), leq(p, r)), lt(r, q)), path(f->a, pv, r)));
        return exists1(q, and_(and_(member(q, pv), leq(p, q)), and_(path(f->b, pv, q), before)));
      }
    }
    throw std::logic_error("cctl translation: bad kind");
  }

  std::string fresh_fo(const std::string& base) {
    std::string v = fo_.fresh(base);
    fresh_used.push_back(v);
    return v;
  }
  std::string fresh_so(const std::string& base) {
    std::string v = so_.fresh(base);
    fresh_used.push_back(v);
    return v;
  }

  FreshVarPool fo_;
  FreshVarPool so_;
};

}  // namespace

TranslationOutput cctl_to_mpl(const CctlStatePtr& f, const std::string& anchor) {
  CctlTranslator tr(anchor);
  TranslationOutput out;
  out.formula = tr.state(f, anchor);
  out.anchor = anchor;
  out.fresh_vars = std::move(tr.fresh_used);
  out.mode_requirement = QuantMode::Full;
  return out;
}

// ---------------------------------------------------------------------------
// STL* into MTL
// ---------------------------------------------------------------------------

namespace {

class StlTranslator {
 public:
  StlTranslator(const std::string& tree_var, const std::string& anchor, bool relax)
      : relax_(relax) {
    fo_.reserve(anchor);
    so_.reserve(tree_var);
  }

  // membership in the current tree: v in X and below the current root
  MsolPtr cur(const std::string& v, const std::string& X, const std::string& x) {
    return and_(member(v, X), leq(x, v));
  }

  MsolPtr state(const StlStatePtr& f, const std::string& X, const std::string& x) {
    using K = StlState::Kind;
    switch (f->kind) {
      case K::True:
        return tt(x);
      case K::Atom:
        return atom(f->ap, x);
      case K::Not:
        return not_(state(f->a, X, x));
      case K::And:
        return and_(state(f->a, X, x), state(f->b, X, x));
      case K::Count: {
        if (f->grade == 0) return tt(x);
        std::vector<std::string> ys;
        for (uint32_t i = 0; i < f->grade; ++i) ys.push_back(fresh_fo("y"));
        std::vector<MsolPtr> conj;
        for (uint32_t i = 0; i < f->grade; ++i)
          for (uint32_t j = i + 1; j < f->grade; ++j) conj.push_back(not_(eq(ys[i], ys[j])));
        for (uint32_t i = 0; i < f->grade; ++i) {
          conj.push_back(member(ys[i], X));
          conj.push_back(stdlib_child(x, ys[i]));
          conj.push_back(state(f->a, X, ys[i]));
        }
        MsolPtr out = and_all(conj);
        for (uint32_t i = f->grade; i-- > 0;) out = exists1(ys[i], out);
        return out;
      }
      case K::Exists:
        return exists_path(f->p, X, x, false);
      case K::Forall:
        return not_(exists_path(f->p, X, x, true));
      case K::UU:
      case K::RR:
        return down_op(f, X, x);
      case K::SS:
      case K::BB:
        return up_op(f, X, x);
    }
    throw std::logic_error("stl translation: bad kind");
  }

  std::vector<std::string> fresh_used;

 private:
  MsolPtr exists_path(const StlPathPtr& psi, const std::string& X, const std::string& x, bool neg) {
    std::string pv = fresh_so("P");
    std::string z = fresh_fo("z");
    MsolPtr inside =
        forall1(z, implies(member(z, pv), and_(leq(x, z), member(z, X))));
    MsolPtr body = path(psi, X, pv, x);
    if (neg) body = not_(body);
    return exists2(QuantKind::Path, pv, and_(and_(member(x, pv), inside), body));
  }

  MsolPtr path(const StlPathPtr& f, const std::string& X, const std::string& pv,
               const std::string& p) {
    using K = StlPath::Kind;
    switch (f->kind) {
      case K::State:
        return state(f->s, X, p);
      case K::Not:
        return not_(path(f->a, X, pv, p));
      case K::And:
        return and_(path(f->a, X, pv, p), path(f->b, X, pv, p));
      case K::Next: {
        std::string q = fresh_fo("p");
        return exists1(q, and_(and_(member(q, pv), stdlib_child(p, q)), path(f->a, X, pv, q)));
      }
      case K::Until: {
        std::string q = fresh_fo("p");
        std::string r = fresh_fo("p");
        MsolPtr before = forall1(
            r, implies(and_(and_(member(r, pv), leq(p, r)), lt(r, q)), path(f->a, X, pv, r)));
        return exists1(q, and_(and_(member(q, pv), leq(p, q)), and_(path(f->b, X, pv, q), before)));
      }
    }
    throw std::logic_error("stl translation: bad kind");
  }

  // w is in the preservation set of chi on the current tree (X, x)
  MsolPtr in_w(const StlStatePtr& chi, const std::string& X, const std::string& x,
               const std::string& w) {
    return and_(cur(w, X, x), state(chi, X, w));
  }

  MsolPtr rooted_at(const std::string& Y, const std::string& x) {
    std::string y = fresh_fo("u");
    return and_(member(x, Y), forall1(y, implies(member(y, Y), leq(x, y))));
  }

  MsolPtr nonblocking(const std::string& Y) {
    if (relax_) return MsolPtr{};
    std::string u = fresh_fo("u"), v = fresh_fo("v");
    MsolPtr has_child = exists1(v, and_(member(v, Y), stdlib_child(u, v)));
    return forall1(u, implies(member(u, Y), or_(has_child, atom(kFrontierAtom, u))));
  }

  // inner is a chi-preserving subtree of outer (memberships supplied as maker
  // functions so the outer set can be the current tree)
  MsolPtr preserving(const StlStatePtr& chi, const std::string& X, const std::string& x,
                     const std::function<MsolPtr(const std::string&)>& in_inner,
                     const std::function<MsolPtr(const std::string&)>& in_outer) {
    std::string w = fresh_fo("w"), v = fresh_fo("v");
    MsolPtr kids = forall1(
        v, implies(and_(in_outer(v), stdlib_child(w, v)), in_inner(v)));
    return forall1(w, implies(and_(in_inner(w), in_w(chi, X, x, w)), kids));
  }

  MsolPtr conj_opt(std::vector<MsolPtr> parts) {
    std::vector<MsolPtr> keep;
    for (auto& p : parts)
      if (p) keep.push_back(p);
    return and_all(keep);
  }

  // UU / RR: quantification over strict preserving subtrees of the current tree
  MsolPtr down_op(const StlStatePtr& f, const std::string& X, const std::string& x) {
    std::string Xp = fresh_so("X");
    std::string Xpp = fresh_so("X");
    std::string s = fresh_fo("s");
    auto in_cur = [&](const std::string& v) { return cur(v, X, x); };
    auto in_xp = [&](const std::string& v) { return member(v, Xp); };
    auto in_xpp = [&](const std::string& v) { return member(v, Xpp); };

    MsolPtr cand = conj_opt({rooted_at(Xp, x),
                             // contained in and different from the current tree
                             forall1(s, implies(member(s, Xp), in_cur(s))),
                             exists1(s, and_(in_cur(s), not_(member(s, Xp)))),
                             preserving(f->chi, X, x, in_xp, in_cur), nonblocking(Xp)});
    MsolPtr between = conj_opt({rooted_at(Xpp, x),
                                forall1(s, implies(member(s, Xpp), in_cur(s))),
                                forall1(s, implies(member(s, Xp), member(s, Xpp))),
                                exists1(s, and_(member(s, Xpp), not_(member(s, Xp)))),
                                exists1(s, and_(in_cur(s), not_(member(s, Xpp)))),
                                preserving(f->chi, X, x, in_xp, in_xpp),
                                preserving(f->chi, X, x, in_xpp, in_cur), nonblocking(Xpp)});
    MsolPtr all_between = forall2(QuantKind::Tree, Xpp, implies(between, state(f->a, Xpp, x)));
    if (f->kind == StlState::Kind::UU)
      return exists2(QuantKind::Tree, Xp, and_(cand, and_(state(f->b, Xp, x), all_between)));
    // RR: every strict subtree satisfies b, unless some tree strictly between
    // it and the current one satisfies a
    MsolPtr some_between = exists2(QuantKind::Tree, Xpp, and_(between, state(f->a, Xpp, x)));
    return forall2(QuantKind::Tree, Xp, implies(cand, or_(state(f->b, Xp, x), some_between)));
  }

  // SS / BB: quantification over strict preserving supertrees of the current tree
  MsolPtr up_op(const StlStatePtr& f, const std::string& X, const std::string& x) {
    std::string Xp = fresh_so("X");
    std::string Xpp = fresh_so("X");
    std::string s = fresh_fo("s");
    auto in_cur = [&](const std::string& v) { return cur(v, X, x); };
    auto in_xp = [&](const std::string& v) { return member(v, Xp); };
    auto in_xpp = [&](const std::string& v) { return member(v, Xpp); };

    MsolPtr cand = conj_opt({rooted_at(Xp, x),
                             forall1(s, implies(in_cur(s), member(s, Xp))),
                             exists1(s, and_(member(s, Xp), not_(in_cur(s)))),
                             preserving(f->chi, X, x, in_cur, in_xp), nonblocking(Xp)});
    MsolPtr between = conj_opt({rooted_at(Xpp, x),
                                forall1(s, implies(in_cur(s), member(s, Xpp))),
                                forall1(s, implies(member(s, Xpp), member(s, Xp))),
                                exists1(s, and_(member(s, Xpp), not_(in_cur(s)))),
                                exists1(s, and_(member(s, Xp), not_(member(s, Xpp)))),
                                preserving(f->chi, X, x, in_xpp, in_xp),
                                preserving(f->chi, X, x, in_cur, in_xpp), nonblocking(Xpp)});
    MsolPtr all_between = forall2(QuantKind::Tree, Xpp, implies(between, state(f->a, Xpp, x)));
    if (f->kind == StlState::Kind::SS)
      return exists2(QuantKind::Tree, Xp, and_(cand, and_(state(f->b, Xp, x), all_between)));
    MsolPtr some_between = exists2(QuantKind::Tree, Xpp, and_(between, state(f->a, Xpp, x)));
    return forall2(QuantKind::Tree, Xp, implies(cand, or_(state(f->b, Xp, x), some_between)));
  }

  std::string fresh_fo(const std::string& base) {
    std::string v = fo_.fresh(base);
    fresh_used.push_back(v);
    return v;
  }
  std::string fresh_so(const std::string& base) {
    std::string v = so_.fresh(base);
    fresh_used.push_back(v);
    return v;
  }

  bool relax_;
  FreshVarPool fo_;
  FreshVarPool so_;
};

}  // namespace

TranslationOutput stl_to_mtl(const StlStatePtr& f, const std::string& tree_var,
                             const std::string& anchor, bool relax_nonblocking) {
  if (stl::pure_cctl(f)) return cctl_to_mpl(stl::to_cctl(f), anchor);
  StlTranslator tr(tree_var, anchor, relax_nonblocking);
  TranslationOutput out;
  out.formula = tr.state(f, tree_var, anchor);
  out.anchor = anchor;
  out.fresh_vars = std::move(tr.fresh_used);
  out.mode_requirement = QuantMode::Full;
  return out;
}

// ---------------------------------------------------------------------------
// MTL on chains into FO; MTL into coWMTL
// ---------------------------------------------------------------------------

namespace {

enum class TreeQuantTarget { ChainFo, CoWeak };

class SubtreeQuantRewriter {
 public:
  SubtreeQuantRewriter(const MsolPtr& whole, TreeQuantTarget target) : target_(target) {
    fo_.reserve(all_fo_names(whole));
    so_.reserve(all_so_names(whole));
  }

  MsolPtr rewrite(const MsolPtr& f) {
    using K = MsolNode::Kind;
    switch (f->kind) {
      case K::Atom:
      case K::Leq:
        return f;
      case K::Member: {
        auto it = env_.find(f->v2);
        if (it == env_.end() || it->second.empty())
          throw std::invalid_argument("translator: free second-order variable " + f->v2);
        const Binding& b = it->second.back();
        if (b.infinite) {
          if (target_ == TreeQuantTarget::ChainFo) return leq(b.lo, f->v1);
          return f;
        }
        if (target_ == TreeQuantTarget::ChainFo)
          return and_(leq(b.lo, f->v1), leq(f->v1, b.hi));
        return and_(member(f->v1, b.set), not_(lt(b.lo, f->v1)));
      }
      case K::Not:
        return not_(rewrite(f->a));
      case K::And:
        return and_(rewrite(f->a), rewrite(f->b));
      case K::Or:
        return or_(rewrite(f->a), rewrite(f->b));
      case K::Implies:
        return implies(rewrite(f->a), rewrite(f->b));
      case K::Exists1:
        return exists1(f->v1, rewrite(f->a));
      case K::Forall1:
        return forall1(f->v1, rewrite(f->a));
      case K::Exists2: {
        if (f->qkind != QuantKind::Tree)
          throw std::invalid_argument("translator: only subtree quantifiers are supported");
        return rewrite_exists_tree(f);
      }
      case K::Forall2: {
        if (f->qkind != QuantKind::Tree)
          throw std::invalid_argument("translator: only subtree quantifiers are supported");
        MsolPtr ex = rewrite_exists_tree(msol::exists2(QuantKind::Tree, f->v2, not_(f->a)));
        return not_(ex);
      }
    }
    throw std::logic_error("translator: bad kind");
  }

 private:
  struct Binding {
    bool infinite = false;
    std::string lo, hi;  // chain endpoints
    std::string set;     // co-weak surrogate subtree
  };

  MsolPtr rewrite_exists_tree(const MsolPtr& f) {
    const std::string& X = f->v2;
    if (target_ == TreeQuantTarget::ChainFo) {
      std::string lo = fo_.fresh("x");
      std::string hi = fo_.fresh("x");
      env_[X].push_back({true, lo, hi, {}});
      MsolPtr inf_branch = exists1(lo, rewrite(f->a));
      env_[X].back().infinite = false;
      MsolPtr fin_branch = exists1(lo, exists1(hi, and_(leq(lo, hi), rewrite(f->a))));
      env_[X].pop_back();
      return or_(inf_branch, fin_branch);
    }
    std::string xb = fo_.fresh("x");
    std::string Xb = so_.fresh(X);
    env_[X].push_back({true, xb, {}, Xb});
    MsolPtr inf_branch = exists2(QuantKind::Tree, X, rewrite(f->a));
    env_[X].back().infinite = false;
    MsolPtr fin_branch = exists2(
        QuantKind::Tree, Xb, exists1(xb, and_(stdlib_theta_cow(xb, Xb), rewrite(f->a))));
    env_[X].pop_back();
    return or_(inf_branch, fin_branch);
  }

  TreeQuantTarget target_;
  FreshVarPool fo_;
  FreshVarPool so_;
  std::map<std::string, std::vector<Binding>> env_;
};

}  // namespace

MsolPtr mtl_chain_to_fo(const MsolPtr& f) {
  SubtreeQuantRewriter rw(f, TreeQuantTarget::ChainFo);
  return rw.rewrite(f);
}

MsolPtr mtl_to_cowmtl(const MsolPtr& f) {
  SubtreeQuantRewriter rw(f, TreeQuantTarget::CoWeak);
  return rw.rewrite(f);
}

}  // namespace mtlkit
