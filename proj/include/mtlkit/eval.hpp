#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtlkit/formula.hpp"
#include "mtlkit/tree_model.hpp"

// Ground-truth semantic oracles.  Everything here is brute force on purpose:
// second-order quantifiers range over explicitly enumerated candidate sets,
// fixpoints run Kleene iteration, path quantifiers enumerate paths.

namespace mtlkit {

struct Valuation1 {
  std::map<std::string, int> at;
};

struct Valuation2 {
  std::map<std::string, DenSet> at;
};

using GmcAssignment = Valuation2;

enum class PathDomain { All, Finite, Maximal, InfiniteApprox };

PathDomain path_domain_from_name(const std::string& name);
const char* path_domain_name(PathDomain d);

struct EvalConfig {
  QuantMode mode = QuantMode::Full;
  bool horizon_enabled = false;
  PathDomain path_domain = PathDomain::All;
  bool relax_nonblocking = false;

  void validate() const;
};

// Reserved atomic proposition resolved against frontier marks when the
// horizon convention is enabled.
inline constexpr const char* kFrontierAtom = "@frontier";

struct EvalStats {
  int max_fix_rounds = 0;  // largest Kleene round count of any fixpoint
};

// ---------------------------------------------------------------------------
// Brute-force MSOL evaluation.
//
// Formulas compile once into a slot-resolved form; per-model structure lives
// in an MsolContext that can be relabeled cheaply when streaming labelings
// over a fixed shape.  Evaluation computes, bottom-up, a dense truth table
// per subformula over the value spaces of its free variables.
// ---------------------------------------------------------------------------

struct MsolCompiled;
using MsolCompiledPtr = std::shared_ptr<const MsolCompiled>;

// `anchor`, when given, is a free first-order variable evaluated at every
// node (the denotation index); other free variables take fixed values from
// the valuations at evaluation time.
MsolCompiledPtr msol_compile(const MsolPtr& f, const std::optional<std::string>& anchor,
                             const std::vector<std::string>& fixed_fo,
                             const std::vector<std::string>& fixed_so);

class MsolContext {
 public:
  MsolContext(const TreeModel& t, const EvalConfig& cfg);
  void relabel(const TreeModel& t);  // same shape, fresh labels/frontier
  const TreeModel& model() const { return *model_; }
  const EvalConfig& config() const { return cfg_; }
  const std::vector<DenSet>& candidates(QuantKind kind);
  DenSet ap_mask(const std::string& name) const;
  int size() const { return n_; }
  bool leq(int u, int v) const { return desc_[u].test(v); }

 private:
  const TreeModel* model_;
  EvalConfig cfg_;
  int n_;
  std::vector<DenSet> desc_;
  std::map<std::string, DenSet> apmask_;
  std::optional<std::vector<DenSet>> cand_[3];
  friend struct MsolCompiled;
};

bool eval_msol_compiled(const MsolCompiled& c, MsolContext& ctx, const Valuation1& v1,
                        const Valuation2& v2);
DenSet denot_msol_compiled(const MsolCompiled& c, MsolContext& ctx, const Valuation1& v1,
                           const Valuation2& v2);

// One-shot conveniences.
bool eval_msol(const MsolPtr& f, const TreeModel& t, const Valuation1& v1, const Valuation2& v2,
               const EvalConfig& cfg);
DenSet denot_msol(const MsolPtr& f, const std::string& x, const TreeModel& t, const Valuation2& v2,
                  const EvalConfig& cfg);

// ---------------------------------------------------------------------------
// Graded mu-calculus
// ---------------------------------------------------------------------------

DenSet eval_gmc(const GmcPtr& f, const TreeModel& t, const GmcAssignment& asg,
                const EvalConfig& cfg = {}, EvalStats* stats = nullptr);
DenSet eval_gmc_graph(const GmcPtr& f, const KripkeStructure& k, const GmcAssignment& asg,
                      EvalStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Counting CTL*
// ---------------------------------------------------------------------------

bool eval_cctl(const CctlStatePtr& f, const TreeModel& t, int node, const EvalConfig& cfg);
// Path formula at position `pos` of an explicit path (list of node ids, each
// the child of its predecessor).
bool eval_cctl_path(const CctlPathPtr& f, const TreeModel& t, const std::vector<int>& path, int pos,
                    const EvalConfig& cfg);
DenSet cctl_denot(const CctlStatePtr& f, const TreeModel& t, const EvalConfig& cfg);

// ---------------------------------------------------------------------------
// STL*
// ---------------------------------------------------------------------------

// Satisfaction of a state formula by the substructure `sub` (a subtree of the
// model sharing root `root`) within the full model.
bool eval_stl(const StlStatePtr& f, const TreeModel& star, const DenSet& sub, int root,
              const EvalConfig& cfg);
// Node-indexed denotation on the whole model: { w | subtree at w satisfies f }.
DenSet stl_denot(const StlStatePtr& f, const TreeModel& star, const EvalConfig& cfg);

// ---------------------------------------------------------------------------
// Assignment machinery from the one-step development
// ---------------------------------------------------------------------------

// Maximal connected component of W rooted at w.
DenSet restrict_component(const DenSet& w_set, int w, const TreeModel& t);

// (Z,O)-restriction of an assignment to W and its one-step extension.
GmcAssignment restrict_assignment(const GmcAssignment& asg, const DenSet& w_set,
                                  const VarRoleSets& roles, const TreeModel& t);

// One-step simulation of `a` by `b` relative to W.
bool one_step_sim(const GmcAssignment& a, const GmcAssignment& b, const DenSet& w_set,
                  const VarRoleSets& roles, const TreeModel& t);

// Children of all nodes in W.
DenSet post_set(const DenSet& w_set, const TreeModel& t);

}  // namespace mtlkit
