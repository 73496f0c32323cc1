#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtlkit/formula.hpp"

// Purely syntactic transformations and well-formedness checks shared by the
// evaluators and translators.

namespace mtlkit {

struct FreeVars {
  std::set<std::string> fo;  // first-order variables
  std::set<std::string> so;  // second-order / fixpoint variables
};

FreeVars free_vars(const MsolPtr& f);
FreeVars free_vars(const GmcPtr& f);
FreeVars free_vars(const CctlStatePtr& f);
FreeVars free_vars(const StlStatePtr& f);

// Canonical desugaring: or/implies/universal quantifiers rewritten over
// not/and/exists.  Idempotent.
MsolPtr desugar(const MsolPtr& f);

// Membership check for the context-sensitive one-step grammar.  InTheta means
// the formula derives from the fixpoint rule, InPhi from the base rule (for a
// fixpoint-headed formula the fixpoint rule is reported).  Reject carries the
// path of child indices from the root to the offending subformula.
struct OneStepVerdict {
  enum class Kind { InTheta, InPhi, Reject };
  Kind kind = Kind::Reject;
  std::string reason;
  std::vector<int> path;

  bool accepted() const { return kind != Kind::Reject; }
};

OneStepVerdict check_one_step(const GmcPtr& f, const VarRoleSets& roles);

bool is_pnf(const GmcPtr& f);

// True iff no nu-bound variable occurs free in a mu-subformula and vice
// versa.  Throws std::invalid_argument on non-PNF input.
bool check_alternation_free(const GmcPtr& f);

// Positive normal form: negation pushed onto atoms.  Free variables negate
// like atoms (the fixpoint dualities of the translators rely on this); a
// bound variable ending up under an odd number of negations throws
// std::invalid_argument.
GmcPtr pnf(const GmcPtr& f);

// Capture-avoiding substitution of every free occurrence of `x` by `value`.
GmcPtr subst_var(const GmcPtr& f, const std::string& x, const GmcPtr& value);

enum class SuppressDir { Down, Up };

// Time-zero suppression: free occurrences of `x` outside the scope of any
// modality become ff (Down) or tt (Up); occurrences under a modality and
// bound occurrences are untouched.
GmcPtr suppress(const GmcPtr& f, const std::string& x, SuppressDir dir);

// For f = mu X1...mu Xk. body (a maximal block of least fixpoints), returns a
// fresh variable Y and body[X1/Y,...,Xk/Y].  Throws on non-mu input.
std::pair<std::string, GmcPtr> merge_lfps(const GmcPtr& f);

// Same for a block of greatest fixpoints.
std::pair<std::string, GmcPtr> merge_gfps(const GmcPtr& f);

// Formula size with unary grades: every connective, atom, grade tick and
// quantifier contributes one.  In particular |D{k} f| = k + 1 + |f|.
uint64_t cctl_size(const CctlStatePtr& f);
uint64_t cctl_size(const CctlPathPtr& f);

bool is_balanced(const CctlStatePtr& f);
bool is_balanced(const CctlPathPtr& f);

// Equivalence-preserving padding that makes is_balanced true.  Sides of an
// until (and the conjuncts of an E body) are grown with tt-conjuncts; a
// single even-size tautology conjunct fixes odd size gaps, which pure
// tt-conjunction (+2 each) cannot reach.
CctlStatePtr balance(const CctlStatePtr& f);
CctlPathPtr balance(const CctlPathPtr& f);

// Fresh-name pool: fresh("x") yields x, x1, x2, ... skipping used names, and
// never hands out the same name twice.
class FreshVarPool {
 public:
  FreshVarPool() = default;
  explicit FreshVarPool(std::set<std::string> used) : used_(std::move(used)) {}
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

// Every variable name occurring anywhere in the formula (free or bound).
std::set<std::string> all_var_names(const GmcPtr& f);
std::set<std::string> all_fo_names(const MsolPtr& f);
std::set<std::string> all_so_names(const MsolPtr& f);

}  // namespace mtlkit
