#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mtlkit/eval.hpp"
#include "mtlkit/formula.hpp"
#include "mtlkit/tree_model.hpp"

// The experiment and property-test engine: oracle-equivalence runs,
// lemma-as-test suites, and the distinguishability experiments on the
// counterexample families.

namespace mtlkit {

struct Corpus {
  enum class Source { Enumerate, Family, Files };
  Source source = Source::Enumerate;
  // Enumerate
  int max_nodes = 5;
  std::vector<std::string> ap;
  // Family
  std::string family;  // nd | d | a | na | chain | binary
  int n_from = 2, n_to = 4;
  int depth = 3;
  // Files
  std::vector<std::string> files;

  uint64_t seed = 0;

  // Deterministic iteration; fn returns false to stop early.
  void for_each(const std::function<bool(const TreeModel&, uint64_t)>& fn) const;
  uint64_t count() const;
  std::vector<TreeModel> materialize() const;
};

struct Counterexample {
  uint64_t model_id = 0;
  std::string model_json;
  int node = -1;
  std::string lhs_value, rhs_value;
  std::string detail;
};

struct EquivReport {
  enum class Status { Pass, Fail, ApproxReport };
  Status status = Status::Pass;
  uint64_t models = 0;
  std::optional<Counterexample> counterexample;
  int64_t elapsed_ms = 0;
  std::vector<std::string> notes;

  bool passed() const { return status != Status::Fail; }
  std::string to_json() const;
};

// A (formula, evaluator) pair that yields a node-indexed denotation.
struct EvalBinding {
  enum class Which { GmcTree, MsolDenot, CctlNodes, StlNodes };
  Which which = Which::GmcTree;
  GmcPtr gmc;
  MsolPtr msol;
  std::string anchor = "x";
  // second-order variables bound to the full node set at evaluation time
  // (the current-tree variable of the STL* translation)
  std::vector<std::string> full_set_vars;
  CctlStatePtr cctl;
  StlStatePtr stl;
  EvalConfig cfg;

  DenSet denot(const TreeModel& t) const;
  std::string describe() const;
  void precompile() const;

 private:
  mutable MsolCompiledPtr compiled_;
};

EvalBinding bind_gmc(GmcPtr f, EvalConfig cfg = {});
EvalBinding bind_msol_denot(MsolPtr f, std::string anchor, EvalConfig cfg,
                            std::vector<std::string> full_set_vars = {});
EvalBinding bind_cctl(CctlStatePtr f, EvalConfig cfg = {});
EvalBinding bind_stl(StlStatePtr f, EvalConfig cfg = {});

// Node-for-node denotation agreement over every corpus model; the first
// mismatch is reported with an independently re-checkable counterexample.
EquivReport equiv_check(const EvalBinding& lhs, const EvalBinding& rhs, const Corpus& corpus,
                        int jobs = 1);

enum class LemmaSuiteName {
  Monotonicity,
  Independence,
  Shannon,
  SuppressionOrder,
  FiniteWitness,
  GradedDuality,
  ModeCoherence,
};

LemmaSuiteName lemma_suite_from_name(const std::string& s);
const char* lemma_suite_name(LemmaSuiteName n);

EquivReport lemma_suite(LemmaSuiteName name, const Corpus& corpus, int samples, uint64_t seed);

// Distinguishability of D_n vs ND_n under counting-CTL*: every enumerated
// state formula evaluated at both roots; agreement expected below size n.
struct IndistRow {
  std::string formula;
  uint64_t size = 0;
  bool on_d = false;
  bool on_nd = false;
};

struct IndistResult {
  std::vector<IndistRow> rows;
  uint64_t disagreements_below_n = 0;
  EquivReport report;
};

IndistResult indist_experiment(int n, int depth, uint64_t max_formula_size);

// h-compatible finite paths in an NA_n unfolding are indistinguishable by
// balanced weak path formulas of size <= h.  Report-grade.
EquivReport hcompat_experiment(int n, int depth, int h, uint64_t max_formula_size, int min_pairs,
                               uint64_t seed);

// ---------------------------------------------------------------------------
// Formula generators (seeded, deterministic)
// ---------------------------------------------------------------------------

// Random member of the one-step base fragment Phi[Z,O] / fixpoint fragment
// Theta[Z,O]; membership holds by construction.
GmcPtr gen_phi(const VarRoleSets& roles, int depth, std::mt19937_64& rng,
               const std::vector<std::string>& ap);
GmcPtr gen_theta(const VarRoleSets& roles, int depth, std::mt19937_64& rng,
                 const std::vector<std::string>& ap);

// Generators for the round-trip property: arbitrary well-formed members of
// each grammar (path embeddings restricted to printable state shapes).
MsolPtr gen_msol(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap);
GmcPtr gen_gmc(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap);
CctlStatePtr gen_cctl(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap);
StlStatePtr gen_stl(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap);

// Size-lexicographic enumeration of counting-CTL* formulas with unary-grade
// sizes (grades capped by max_grade).
std::vector<CctlStatePtr> enum_cctl_states(uint64_t max_size, const std::vector<std::string>& ap,
                                           uint32_t max_grade);
std::vector<CctlPathPtr> enum_cctl_paths(uint64_t max_size, const std::vector<std::string>& ap,
                                         uint32_t max_grade);

}  // namespace mtlkit
