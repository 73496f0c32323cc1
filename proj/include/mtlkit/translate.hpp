#pragma once

#include <string>
#include <vector>

#include "mtlkit/formula.hpp"

// Syntactic translations between the logic families, all emitting MSOL (or
// first-order) formulas, plus the library of closed-form predicates they are
// built from.  Every clause is pinned by oracle-equivalence tests against the
// brute-force evaluators.

namespace mtlkit {

enum class StdlibName {
  Child,
  Path,
  PathF,
  PathInf,
  Tree,
  Subseteq,
  FinMso,
  FinMtlSubtree,
  Nonblocking,
  Maxsubtree,
  DensityMtl,
  InfBranchingWmtl,
  FinitelyBranchingCowmso,
  ThetaCow,
  AAcceptanceWmtl,
  PhiDenGmc,
  AfAGmc,
};

StdlibName stdlib_name_from_string(const std::string& s);

// Exactly one member is set: the two graded mu-calculus sentences live in
// `gmc`, everything else in `msol`.
struct StdlibFormula {
  MsolPtr msol;
  GmcPtr gmc;
};

StdlibFormula stdlib(StdlibName name, const std::vector<std::string>& args);

// Typed constructors for direct use.
MsolPtr stdlib_child(const std::string& x, const std::string& y);
MsolPtr stdlib_path(const std::string& X);
MsolPtr stdlib_path_f(const std::string& X);
MsolPtr stdlib_path_inf(const std::string& X);
MsolPtr stdlib_tree(const std::string& X);
MsolPtr stdlib_subseteq(const std::string& X, const std::string& Y);
MsolPtr stdlib_fin_mso(const std::string& X);
MsolPtr stdlib_fin_mtl_subtree(const std::string& X);
MsolPtr stdlib_nonblocking(const std::string& X);
MsolPtr stdlib_maxsubtree(const std::string& Y, const std::string& X, const std::string& v);
MsolPtr stdlib_density_mtl();
MsolPtr stdlib_inf_branching_wmtl();
MsolPtr stdlib_finitely_branching_cowmso(const std::string& Z);
MsolPtr stdlib_theta_cow(const std::string& x, const std::string& X);
MsolPtr stdlib_a_acceptance_wmtl();
GmcPtr stdlib_phi_den_gmc();
GmcPtr stdlib_af_a_gmc();

struct TranslationOutput {
  MsolPtr formula;
  std::string anchor;                   // free first-order variable of the output
  std::vector<std::string> fresh_vars;  // variables introduced by the run
  QuantMode mode_requirement = QuantMode::Full;
};

// One-step graded mu-calculus into MTL.  Atoms become P_a(x), fixpoint
// variables memberships, graded modalities distinct-children blocks, greatest
// fixpoints a subtree witness with a pointwise re-check, least fixpoints the
// dual.  Requires one-step membership under `roles`.
TranslationOutput osgmc_to_mtl(const GmcPtr& f, const std::string& anchor,
                               const VarRoleSets& roles = {});

// Alternation-free fragment into weak MTL: least-fixpoint blocks are merged,
// time-zero suppressed and witnessed by a finite subtree whose per-node check
// uses the maximal rooted component of the witness; greatest fixpoints go
// through the duality.
TranslationOutput osafgmc_to_wmtl(const GmcPtr& f, const std::string& anchor,
                                  const VarRoleSets& roles = {});

// Counting CTL* into MPL: an explicit start-anchored path variable with
// positions ordered by the descendant relation.
TranslationOutput cctl_to_mpl(const CctlStatePtr& f, const std::string& anchor);

// STL* into MTL: the current substructure is the set variable `tree_var`
// restricted below the anchor; semilattice operators quantify over strict
// preserving subtrees/supertrees.  With `relax_nonblocking` the non-blocking
// conjunct on candidates is dropped (the finite-tree testbed).
TranslationOutput stl_to_mtl(const StlStatePtr& f, const std::string& tree_var,
                             const std::string& anchor, bool relax_nonblocking);

// MTL over chains into first-order logic: each subtree quantifier splits into
// an unbounded-suffix branch and a bounded-interval branch.  Sound on chains.
MsolPtr mtl_chain_to_fo(const MsolPtr& f);

// MTL into co-weak MTL: each subtree quantifier splits into an
// infinite-subtree branch and a finite-subtree simulation guarded by the
// finitely-branching witness predicate.
MsolPtr mtl_to_cowmtl(const MsolPtr& f);

}  // namespace mtlkit
