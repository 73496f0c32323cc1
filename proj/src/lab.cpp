#include "mtlkit/lab.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mtlkit/formula_ops.hpp"
#include "mtlkit/syntax.hpp"
#include "mtlkit/translate.hpp"

namespace mtlkit {

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

namespace {

TreeModel family_model(const std::string& family, int n, int depth) {
  if (family == "nd") return gen_nd(n, depth);
  if (family == "d") return gen_d(n, depth);
  if (family == "a") return gen_a(n, depth);
  if (family == "na") return gen_na(n, depth);
  if (family == "chain") return chain(n);
  if (family == "binary") return complete_binary(n);
  throw std::invalid_argument("unknown family: " + family);
}

}  // namespace

void Corpus::for_each(const std::function<bool(const TreeModel&, uint64_t)>& fn) const {
  uint64_t id = 0;
  switch (source) {
    case Source::Enumerate: {
      TreeEnumerator en(max_nodes, ap);
      while (auto t = en.next())
        if (!fn(*t, id++)) return;
      return;
    }
    case Source::Family: {
      for (int n = n_from; n <= n_to; ++n)
        if (!fn(family_model(family, n, depth), id++)) return;
      return;
    }
    case Source::Files: {
      for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open model file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        if (!fn(tree_from_json(ss.str()), id++)) return;
      }
      return;
    }
  }
}

uint64_t Corpus::count() const {
  switch (source) {
    case Source::Enumerate: return TreeEnumerator(max_nodes, ap).total();
    case Source::Family: return static_cast<uint64_t>(n_to - n_from + 1);
    case Source::Files: return files.size();
  }
  return 0;
}

std::vector<TreeModel> Corpus::materialize() const {
  std::vector<TreeModel> out;
  for_each([&](const TreeModel& t, uint64_t) {
    out.push_back(t);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// EquivReport
// ---------------------------------------------------------------------------

std::string EquivReport::to_json() const {
  nlohmann::json j;
  j["status"] = status == Status::Pass ? "pass" : (status == Status::Fail ? "fail" : "approx-report");
  j["models"] = models;
  if (counterexample) {
    nlohmann::json c;
    c["model_id"] = counterexample->model_id;
    c["model"] = counterexample->model_json.empty()
                     ? nlohmann::json()
                     : nlohmann::json::parse(counterexample->model_json);
    c["node"] = counterexample->node;
    c["lhs"] = counterexample->lhs_value;
    c["rhs"] = counterexample->rhs_value;
    c["detail"] = counterexample->detail;
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  j["elapsed_ms"] = elapsed_ms;
  if (!notes.empty()) j["notes"] = notes;
  return j.dump();
}

// ---------------------------------------------------------------------------
// EvalBinding
// ---------------------------------------------------------------------------

void EvalBinding::precompile() const {
  if (which == Which::MsolDenot && !compiled_) {
    FreeVars fv = free_vars(msol);
    for (const auto& v : fv.fo)
      if (v != anchor)
        throw std::invalid_argument("binding: extra free first-order variable " + v);
    std::vector<std::string> so(fv.so.begin(), fv.so.end());
    compiled_ = msol_compile(msol, anchor, {}, so);
  }
}

DenSet EvalBinding::denot(const TreeModel& t) const {
  switch (which) {
    case Which::GmcTree:
      return eval_gmc(gmc, t, {}, cfg);
    case Which::MsolDenot: {
      precompile();
      MsolContext ctx(t, cfg);
      Valuation2 v2;
      for (const auto& v : full_set_vars) v2.at[v] = DenSet::full(t.size());
      FreeVars fv = free_vars(msol);
      for (const auto& v : fv.so)
        if (!v2.at.count(v))
          throw std::invalid_argument("binding: free second-order variable " + v + " unvalued");
      return denot_msol_compiled(*compiled_, ctx, Valuation1{}, v2);
    }
    case Which::CctlNodes:
      return cctl_denot(cctl, t, cfg);
    case Which::StlNodes:
      return stl_denot(stl, t, cfg);
  }
  throw std::logic_error("binding: bad kind");
}

std::string EvalBinding::describe() const {
  switch (which) {
    case Which::GmcTree: return "gmc:" + print(gmc);
    case Which::MsolDenot: return "msol:" + print(msol);
    case Which::CctlNodes: return "cctl:" + print(cctl);
    case Which::StlNodes: return "stl:" + print(stl);
  }
  return {};
}

EvalBinding bind_gmc(GmcPtr f, EvalConfig cfg) {
  EvalBinding b;
  b.which = EvalBinding::Which::GmcTree;
  b.gmc = std::move(f);
  b.cfg = cfg;
  return b;
}

EvalBinding bind_msol_denot(MsolPtr f, std::string anchor, EvalConfig cfg,
                            std::vector<std::string> full_set_vars) {
  EvalBinding b;
  b.which = EvalBinding::Which::MsolDenot;
  b.msol = std::move(f);
  b.anchor = std::move(anchor);
  b.cfg = cfg;
  b.full_set_vars = std::move(full_set_vars);
  return b;
}

EvalBinding bind_cctl(CctlStatePtr f, EvalConfig cfg) {
  EvalBinding b;
  b.which = EvalBinding::Which::CctlNodes;
  b.cctl = std::move(f);
  b.cfg = cfg;
  return b;
}

EvalBinding bind_stl(StlStatePtr f, EvalConfig cfg) {
  EvalBinding b;
  b.which = EvalBinding::Which::StlNodes;
  b.stl = std::move(f);
  b.cfg = cfg;
  return b;
}

// ---------------------------------------------------------------------------
// equiv_check
// ---------------------------------------------------------------------------

namespace {

struct FailSlot {
  std::atomic<uint64_t> first_bad{UINT64_MAX};
  std::mutex mu;
  Counterexample ce;

  void offer(uint64_t id, const Counterexample& c) {
    uint64_t cur = first_bad.load();
    while (id < cur && !first_bad.compare_exchange_weak(cur, id)) {
    }
    std::lock_guard<std::mutex> lock(mu);
    if (id == first_bad.load()) ce = c;
  }
};

bool check_one_model(const EvalBinding& lhs, const EvalBinding& rhs, const TreeModel& t, uint64_t id,
                     FailSlot& fail) {
  DenSet dl = lhs.denot(t);
  DenSet dr = rhs.denot(t);
  if (dl == dr) return true;
  int node = -1;
  for (int v = 0; v < t.size(); ++v)
    if (dl.test(v) != dr.test(v)) {
      node = v;
      break;
    }
  Counterexample ce;
  ce.model_id = id;
  ce.model_json = tree_to_json(t);
  ce.node = node;
  ce.lhs_value = dl.to_string();
  ce.rhs_value = dr.to_string();
  ce.detail = lhs.describe() + "  vs  " + rhs.describe();
  fail.offer(id, ce);
  return false;
}

}  // namespace

EquivReport equiv_check(const EvalBinding& lhs, const EvalBinding& rhs, const Corpus& corpus,
                        int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  lhs.precompile();
  rhs.precompile();
  FailSlot fail;
  std::atomic<uint64_t> models{0};
  if (jobs <= 1) {
    corpus.for_each([&](const TreeModel& t, uint64_t id) {
      models.fetch_add(1, std::memory_order_relaxed);
      return check_one_model(lhs, rhs, t, id, fail);
    });
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        corpus.for_each([&](const TreeModel& t, uint64_t id) {
          if (id % static_cast<uint64_t>(jobs) != static_cast<uint64_t>(w)) return true;
          if (fail.first_bad.load(std::memory_order_relaxed) < id) return false;
          models.fetch_add(1, std::memory_order_relaxed);
          check_one_model(lhs, rhs, t, id, fail);
          return true;
        });
      });
    }
    for (auto& th : workers) th.join();
  }
  EquivReport rep;
  rep.models = models.load();
  if (fail.first_bad.load() != UINT64_MAX) {
    rep.status = EquivReport::Status::Fail;
    rep.counterexample = fail.ce;
  }
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

namespace {

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

uint32_t small_grade(std::mt19937_64& rng) { return static_cast<uint32_t>(rng() % 3); }

}  // namespace

GmcPtr gen_phi(const VarRoleSets& roles, int depth, std::mt19937_64& rng,
               const std::vector<std::string>& ap) {
  std::vector<std::string> zs(roles.zero.begin(), roles.zero.end());
  if (depth <= 0) {
    int c = static_cast<int>(rng() % (zs.empty() ? 3 : 4));
    switch (c) {
      case 0: return gmc::tt();
      case 1: return gmc::ff();
      case 2: return ap.empty() ? gmc::tt() : gmc::atom(pick(ap, rng));
      default: return gmc::var(pick(zs, rng));
    }
  }
  int c = static_cast<int>(rng() % (zs.empty() ? 6 : 7));
  switch (c) {
    case 0:  // negation restricted to variable-free parts keeps positivity
      return gmc::not_(gen_phi({}, depth - 1, rng, ap));
    case 1:
      return gmc::and_(gen_phi(roles, depth - 1, rng, ap), gen_phi(roles, depth - 1, rng, ap));
    case 2:
      return gmc::or_(gen_phi(roles, depth - 1, rng, ap), gen_phi(roles, depth - 1, rng, ap));
    case 3: {
      VarRoleSets sub;
      sub.zero = roles.one;
      return gmc::diamond(small_grade(rng), gen_phi(sub, depth - 1, rng, ap));
    }
    case 4: {
      VarRoleSets sub;
      sub.zero = roles.one;
      return gmc::box(small_grade(rng), gen_phi(sub, depth - 1, rng, ap));
    }
    case 5:  // a closed fixpoint leaf
      return gen_theta({}, depth - 1, rng, ap);
    default:
      return gmc::var(pick(zs, rng));
  }
}

GmcPtr gen_theta(const VarRoleSets& roles, int depth, std::mt19937_64& rng,
                 const std::vector<std::string>& ap) {
  if (depth > 0 && rng() % 2 == 0) {
    static const std::vector<std::string> names{"X", "Y", "Z"};
    std::string v = pick(names, rng);
    VarRoleSets sub = roles;
    sub.zero.insert(v);
    sub.one.insert(v);
    GmcPtr body = gen_theta(sub, depth - 1, rng, ap);
    return rng() % 2 == 0 ? gmc::mu(v, body) : gmc::nu(v, body);
  }
  return gen_phi(roles, depth, rng, ap);
}

MsolPtr gen_msol(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  static const std::vector<std::string> fo{"x", "y", "z"};
  static const std::vector<std::string> so{"X", "Y"};
  static const std::vector<QuantKind> kinds{QuantKind::Set, QuantKind::Tree, QuantKind::Path};
  if (depth <= 0) {
    switch (rng() % 3) {
      case 0: return msol::atom(ap.empty() ? "a" : pick(ap, rng), pick(fo, rng));
      case 1: return msol::leq(pick(fo, rng), pick(fo, rng));
      default: return msol::member(pick(fo, rng), pick(so, rng));
    }
  }
  switch (rng() % 8) {
    case 0: return msol::not_(gen_msol(depth - 1, rng, ap));
    case 1: return msol::and_(gen_msol(depth - 1, rng, ap), gen_msol(depth - 1, rng, ap));
    case 2: return msol::or_(gen_msol(depth - 1, rng, ap), gen_msol(depth - 1, rng, ap));
    case 3: return msol::implies(gen_msol(depth - 1, rng, ap), gen_msol(depth - 1, rng, ap));
    case 4: return msol::exists1(pick(fo, rng), gen_msol(depth - 1, rng, ap));
    case 5: return msol::forall1(pick(fo, rng), gen_msol(depth - 1, rng, ap));
    case 6: return msol::exists2(pick(kinds, rng), pick(so, rng), gen_msol(depth - 1, rng, ap));
    default: return msol::forall2(pick(kinds, rng), pick(so, rng), gen_msol(depth - 1, rng, ap));
  }
}

GmcPtr gen_gmc(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  VarRoleSets roles;
  roles.zero = {"X", "Y"};
  roles.one = {"X", "Y"};
  return gen_theta(roles, depth, rng, ap);
}

namespace {

CctlPathPtr gen_cctl_path(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap);

CctlStatePtr gen_cctl_state(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  if (depth <= 0) {
    if (ap.empty() || rng() % 3 == 0) return cctl::tt();
    return cctl::atom(pick(ap, rng));
  }
  switch (rng() % 5) {
    case 0: return cctl::not_(gen_cctl_state(depth - 1, rng, ap));
    case 1:
      return cctl::and_(gen_cctl_state(depth - 1, rng, ap), gen_cctl_state(depth - 1, rng, ap));
    case 2: return cctl::exists(gen_cctl_path(depth - 1, rng, ap));
    case 3: return cctl::forall(gen_cctl_path(depth - 1, rng, ap));
    default: return cctl::count(small_grade(rng), gen_cctl_state(depth - 1, rng, ap));
  }
}

// embedded state formulas restricted to shapes the canonical printer
// round-trips in path position
CctlStatePtr gen_cctl_embeddable(int depth, std::mt19937_64& rng,
                                 const std::vector<std::string>& ap) {
  switch (rng() % 4) {
    case 0: return ap.empty() ? cctl::tt() : cctl::atom(pick(ap, rng));
    case 1: return cctl::tt();
    case 2:
      if (depth > 0) return cctl::count(small_grade(rng), gen_cctl_state(depth - 1, rng, ap));
      return cctl::tt();
    default:
      if (depth > 0) return cctl::exists(gen_cctl_path(depth - 1, rng, ap));
      return ap.empty() ? cctl::tt() : cctl::atom(pick(ap, rng));
  }
}

CctlPathPtr gen_cctl_path(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  if (depth <= 0) return cctl::embed(gen_cctl_embeddable(0, rng, ap));
  switch (rng() % 5) {
    case 0: return cctl::pnot(gen_cctl_path(depth - 1, rng, ap));
    case 1:
      return cctl::pand(gen_cctl_path(depth - 1, rng, ap), gen_cctl_path(depth - 1, rng, ap));
    case 2: return cctl::next(gen_cctl_path(depth - 1, rng, ap));
    case 3:
      return cctl::until(gen_cctl_path(depth - 1, rng, ap), gen_cctl_path(depth - 1, rng, ap));
    default: return cctl::embed(gen_cctl_embeddable(depth, rng, ap));
  }
}

StlPathPtr gen_stl_path(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap);

StlStatePtr gen_stl_state(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  if (depth <= 0) {
    if (ap.empty() || rng() % 3 == 0) return stl::tt();
    return stl::atom(pick(ap, rng));
  }
  switch (rng() % 8) {
    case 0: return stl::not_(gen_stl_state(depth - 1, rng, ap));
    case 1: return stl::and_(gen_stl_state(depth - 1, rng, ap), gen_stl_state(depth - 1, rng, ap));
    case 2: return stl::exists(gen_stl_path(depth - 1, rng, ap));
    case 3: return stl::forall(gen_stl_path(depth - 1, rng, ap));
    case 4: return stl::count(small_grade(rng), gen_stl_state(depth - 1, rng, ap));
    default: {
      StlStatePtr chi = gen_stl_state(depth > 1 ? 1 : 0, rng, ap);
      StlStatePtr a = gen_stl_state(depth - 1, rng, ap);
      StlStatePtr b = gen_stl_state(depth - 1, rng, ap);
      switch (rng() % 4) {
        case 0: return stl::uu(chi, a, b);
        case 1: return stl::rr(chi, a, b);
        case 2: return stl::ss(chi, a, b);
        default: return stl::bb(chi, a, b);
      }
    }
  }
}

StlStatePtr gen_stl_embeddable(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  switch (rng() % 4) {
    case 0: return ap.empty() ? stl::tt() : stl::atom(pick(ap, rng));
    case 1: return stl::tt();
    case 2:
      if (depth > 0) return stl::count(small_grade(rng), gen_stl_state(depth - 1, rng, ap));
      return stl::tt();
    default:
      if (depth > 0)
        return stl::uu(stl::tt(), gen_stl_state(depth - 1, rng, ap),
                       gen_stl_state(depth - 1, rng, ap));
      return stl::tt();
  }
}

StlPathPtr gen_stl_path(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  if (depth <= 0) return stl::embed(gen_stl_embeddable(0, rng, ap));
  switch (rng() % 5) {
    case 0: return stl::pnot(gen_stl_path(depth - 1, rng, ap));
    case 1: return stl::pand(gen_stl_path(depth - 1, rng, ap), gen_stl_path(depth - 1, rng, ap));
    case 2: return stl::next(gen_stl_path(depth - 1, rng, ap));
    case 3: return stl::until(gen_stl_path(depth - 1, rng, ap), gen_stl_path(depth - 1, rng, ap));
    default: return stl::embed(gen_stl_embeddable(depth, rng, ap));
  }
}

}  // namespace

CctlStatePtr gen_cctl(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  return gen_cctl_state(depth, rng, ap);
}

StlStatePtr gen_stl(int depth, std::mt19937_64& rng, const std::vector<std::string>& ap) {
  return gen_stl_state(depth, rng, ap);
}

// ---------------------------------------------------------------------------
// size-lexicographic enumeration of counting-CTL*
// ---------------------------------------------------------------------------

namespace {

struct CctlBySize {
  std::vector<std::vector<CctlStatePtr>> st;
  std::vector<std::vector<CctlPathPtr>> pa;
};

CctlBySize build_by_size(uint64_t max_size, const std::vector<std::string>& ap, uint32_t max_grade) {
  CctlBySize out;
  out.st.resize(max_size + 1);
  out.pa.resize(max_size + 1);
  for (uint64_t s = 1; s <= max_size; ++s) {
    if (s == 1) {
      out.st[1].push_back(cctl::tt());
      for (const auto& a : ap) out.st[1].push_back(cctl::atom(a));
    }
    if (s >= 2) {
      for (const auto& f : out.st[s - 1]) out.st[s].push_back(cctl::not_(f));
      for (const auto& p : out.pa[s - 1]) {
        out.st[s].push_back(cctl::exists(p));
        out.st[s].push_back(cctl::forall(p));
      }
      for (uint32_t k = 0; k <= max_grade && uint64_t(k) + 1 < s; ++k)
        for (const auto& f : out.st[s - 1 - k]) out.st[s].push_back(cctl::count(k, f));
    }
    for (uint64_t s1 = 1; s1 + 2 <= s; ++s1)
      for (const auto& f : out.st[s1])
        for (const auto& g : out.st[s - 1 - s1]) out.st[s].push_back(cctl::and_(f, g));
    for (const auto& f : out.st[s]) out.pa[s].push_back(cctl::embed(f));
    if (s >= 2) {
      for (const auto& p : out.pa[s - 1]) {
        out.pa[s].push_back(cctl::pnot(p));
        out.pa[s].push_back(cctl::next(p));
      }
    }
    for (uint64_t s1 = 1; s1 + 2 <= s; ++s1)
      for (const auto& p : out.pa[s1])
        for (const auto& q : out.pa[s - 1 - s1]) {
          out.pa[s].push_back(cctl::pand(p, q));
          out.pa[s].push_back(cctl::until(p, q));
        }
  }
  return out;
}

}  // namespace

std::vector<CctlStatePtr> enum_cctl_states(uint64_t max_size, const std::vector<std::string>& ap,
                                           uint32_t max_grade) {
  CctlBySize by = build_by_size(max_size, ap, max_grade);
  std::vector<CctlStatePtr> out;
  for (uint64_t s = 1; s <= max_size; ++s)
    for (const auto& f : by.st[s]) out.push_back(f);
  return out;
}

std::vector<CctlPathPtr> enum_cctl_paths(uint64_t max_size, const std::vector<std::string>& ap,
                                         uint32_t max_grade) {
  CctlBySize by = build_by_size(max_size, ap, max_grade);
  std::vector<CctlPathPtr> out;
  for (uint64_t s = 1; s <= max_size; ++s)
    for (const auto& p : by.pa[s]) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// lemma suites
// ---------------------------------------------------------------------------

LemmaSuiteName lemma_suite_from_name(const std::string& s) {
  if (s == "monotonicity") return LemmaSuiteName::Monotonicity;
  if (s == "independence") return LemmaSuiteName::Independence;
  if (s == "shannon") return LemmaSuiteName::Shannon;
  if (s == "suppression-order") return LemmaSuiteName::SuppressionOrder;
  if (s == "finite-witness") return LemmaSuiteName::FiniteWitness;
  if (s == "graded-duality") return LemmaSuiteName::GradedDuality;
  if (s == "mode-coherence") return LemmaSuiteName::ModeCoherence;
  throw std::invalid_argument("unknown lemma suite: " + s);
}

const char* lemma_suite_name(LemmaSuiteName n) {
  switch (n) {
    case LemmaSuiteName::Monotonicity: return "monotonicity";
    case LemmaSuiteName::Independence: return "independence";
    case LemmaSuiteName::Shannon: return "shannon";
    case LemmaSuiteName::SuppressionOrder: return "suppression-order";
    case LemmaSuiteName::FiniteWitness: return "finite-witness";
    case LemmaSuiteName::GradedDuality: return "graded-duality";
    case LemmaSuiteName::ModeCoherence: return "mode-coherence";
  }
  return "?";
}

namespace {

DenSet random_subset(int n, std::mt19937_64& rng) {
  DenSet s(n);
  for (int i = 0; i < n; ++i)
    if (rng() % 2) s.set(i);
  return s;
}

GmcAssignment random_assignment(const VarRoleSets& roles, int n, std::mt19937_64& rng) {
  GmcAssignment asg;
  for (const auto& v : roles.zero) asg.at[v] = random_subset(n, rng);
  for (const auto& v : roles.one)
    if (!asg.at.count(v)) asg.at[v] = random_subset(n, rng);
  return asg;
}

struct SuiteFail {
  bool failed = false;
  Counterexample ce;

  void record(const TreeModel& t, uint64_t id, const std::string& detail, const std::string& lhs,
              const std::string& rhs, int node = -1) {
    if (failed) return;
    failed = true;
    ce.model_id = id;
    ce.model_json = tree_to_json(t);
    ce.node = node;
    ce.detail = detail;
    ce.lhs_value = lhs;
    ce.rhs_value = rhs;
  }
};

}  // namespace

EquivReport lemma_suite(LemmaSuiteName name, const Corpus& corpus, int samples, uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<TreeModel> models = corpus.materialize();
  if (models.empty()) throw std::invalid_argument("lemma_suite: empty corpus");

  VarRoleSets roles;
  roles.zero = {"Z", "B"};
  roles.one = {"O", "B"};
  std::vector<std::string> ap = corpus.ap.empty() ? std::vector<std::string>{"a"} : corpus.ap;

  SuiteFail fail;
  uint64_t checked = 0;
  EvalConfig cfg;

  for (int i = 0; i < samples && !fail.failed; ++i) {
    const TreeModel& t = models[rng() % models.size()];
    uint64_t id = static_cast<uint64_t>(i);
    int n = t.size();
    switch (name) {
      case LemmaSuiteName::Monotonicity: {
        GmcPtr phi = gen_phi(roles, 3, rng, ap);
        DenSet w = random_subset(n, rng);
        GmcAssignment a = random_assignment(roles, n, rng);
        GmcAssignment b;
        DenSet post = post_set(w, t);
        for (const auto& [v, s] : a.at) {
          DenSet need(n);
          if (roles.zero.count(v)) need |= s & w;
          if (roles.one.count(v)) need |= s & post;
          b.at[v] = need | random_subset(n, rng);
        }
        if (!one_step_sim(a, b, w, roles, t))
          throw std::logic_error("monotonicity sampler built a non-simulating pair");
        DenSet da = eval_gmc(phi, t, a, cfg);
        DenSet db = eval_gmc(phi, t, b, cfg);
        if (!(da & w).subset_of(db))
          fail.record(t, id, "one-step monotonicity violated for " + print(phi),
                      (da & w).to_string(), db.to_string());
        ++checked;
        break;
      }
      case LemmaSuiteName::Independence: {
        GmcPtr theta = gen_theta(roles, 3, rng, ap);
        GmcAssignment a = random_assignment(roles, n, rng);
        DenSet delta = eval_gmc(theta, t, a, cfg);
        for (int wnode : delta.elements()) {
          DenSet comp = restrict_component(delta, wnode, t);
          GmcAssignment restricted = restrict_assignment(a, comp, roles, t);
          DenSet again = eval_gmc(theta, t, restricted, cfg);
          DenSet rhs = again.test(wnode) ? restrict_component(again, wnode, t) : DenSet(n);
          if (!(comp == rhs)) {
            fail.record(t, id, "independence violated for " + print(theta), comp.to_string(),
                        rhs.to_string(), wnode);
            break;
          }
        }
        ++checked;
        break;
      }
      case LemmaSuiteName::Shannon: {
        GmcPtr phi = gen_phi(roles, 3, rng, ap);
        FreeVars fv = free_vars(phi);
        if (fv.so.empty()) {
          --i;
          continue;
        }
        std::vector<std::string> vars(fv.so.begin(), fv.so.end());
        std::string x = pick(vars, rng);
        GmcAssignment a = random_assignment(roles, n, rng);
        GmcPtr expansion = gmc::or_(suppress(phi, x, SuppressDir::Down),
                                    gmc::and_(gmc::var(x), suppress(phi, x, SuppressDir::Up)));
        DenSet lhs = eval_gmc(phi, t, a, cfg);
        DenSet rhs = eval_gmc(expansion, t, a, cfg);
        if (!(lhs == rhs)) {
          fail.record(t, id, "Shannon expansion violated for " + print(phi), lhs.to_string(),
                      rhs.to_string());
          ++checked;
          break;
        }
        // down-suppressed membership is insensitive to the node's own value
        GmcPtr down = suppress(phi, x, SuppressDir::Down);
        int wnode = static_cast<int>(rng() % n);
        GmcAssignment toggled = a;
        DenSet s = toggled.at[x];
        s.set(wnode, !s.test(wnode));
        toggled.at[x] = s;
        bool m1 = eval_gmc(down, t, a, cfg).test(wnode);
        bool m2 = eval_gmc(down, t, toggled, cfg).test(wnode);
        if (m1 != m2)
          fail.record(t, id, "down-suppression sensitivity for " + print(down),
                      m1 ? "true" : "false", m2 ? "true" : "false", wnode);
        ++checked;
        break;
      }
      case LemmaSuiteName::SuppressionOrder: {
        GmcPtr phi = gen_phi(roles, 3, rng, ap);
        FreeVars fv = free_vars(phi);
        if (fv.so.empty()) {
          --i;
          continue;
        }
        std::vector<std::string> vars(fv.so.begin(), fv.so.end());
        std::string x = pick(vars, rng);
        GmcAssignment a = random_assignment(roles, n, rng);
        DenSet dn = eval_gmc(suppress(phi, x, SuppressDir::Down), t, a, cfg);
        DenSet up = eval_gmc(suppress(phi, x, SuppressDir::Up), t, a, cfg);
        if (!dn.subset_of(up))
          fail.record(t, id, "suppression order violated for " + print(phi), dn.to_string(),
                      up.to_string());
        ++checked;
        break;
      }
      case LemmaSuiteName::FiniteWitness: {
        VarRoleSets sub = roles;
        sub.zero.insert("X");
        sub.one.insert("X");
        GmcPtr theta;
        if (rng() % 3 == 0) {
          VarRoleSets sub2 = sub;
          sub2.zero.insert("W");
          sub2.one.insert("W");
          theta = gmc::mu("X", gmc::mu("W", gen_phi(sub2, 2, rng, ap)));
        } else {
          theta = gmc::mu("X", gen_phi(sub, 2, rng, ap));
        }
        GmcAssignment a = random_assignment(roles, n, rng);
        DenSet denot = eval_gmc(theta, t, a, cfg);
        auto [yvar, merged] = merge_lfps(theta);
        GmcPtr down = suppress(merged, yvar, SuppressDir::Down);
        std::vector<DenSet> trees = subtrees(t, QuantKind::Tree, QuantMode::Full, false);
        for (int wnode = 0; wnode < n; ++wnode) {
          bool found = false;
          for (const DenSet& w : trees) {
            if (!w.test(wnode)) continue;
            bool all = true;
            for (int v : w.elements()) {
              GmcAssignment av = a;
              av.at[yvar] = restrict_component(w, v, t);
              if (!eval_gmc(down, t, av, cfg).test(v)) {
                all = false;
                break;
              }
            }
            if (all) {
              found = true;
              break;
            }
          }
          if (found != denot.test(wnode)) {
            fail.record(t, id, "finite-witness mismatch for " + print(theta),
                        denot.test(wnode) ? "in denotation" : "not in denotation",
                        found ? "witness found" : "no witness", wnode);
            break;
          }
        }
        ++checked;
        break;
      }
      case LemmaSuiteName::GradedDuality: {
        GmcPtr phi = gen_phi(roles, 2, rng, ap);
        uint32_t k = small_grade(rng);
        GmcAssignment a = random_assignment(roles, n, rng);
        DenSet lhs = eval_gmc(gmc::box(k, phi), t, a, cfg);
        DenSet rhs = eval_gmc(gmc::diamond(k, gmc::not_(phi)), t, a, cfg).complement();
        if (!(lhs == rhs))
          fail.record(t, id,
                      "graded duality violated for grade " + std::to_string(k) + ", " + print(phi),
                      lhs.to_string(), rhs.to_string());
        ++checked;
        break;
      }
      case LemmaSuiteName::ModeCoherence: {
        MsolPtr f = gen_msol(3, rng, ap);
        FreeVars fv = free_vars(f);
        for (const auto& v : fv.fo) f = msol::exists1(v, f);
        for (const auto& v : fv.so) f = msol::exists2(QuantKind::Tree, v, f);
        EvalConfig full;
        EvalConfig weak;
        weak.mode = QuantMode::Weak;
        bool bf = eval_msol(f, t, {}, {}, full);
        bool bw = eval_msol(f, t, {}, {}, weak);
        if (bf != bw) {
          fail.record(t, id, "weak/full disagree on a finite tree for " + print(f),
                      bf ? "true" : "false", bw ? "true" : "false");
          ++checked;
          break;
        }
        EvalConfig cw;
        cw.mode = QuantMode::CoWeak;
        MsolPtr ex =
            msol::exists2(QuantKind::Tree, "X", msol::exists1("x", msol::member("x", "X")));
        if (eval_msol(ex, t, {}, {}, cw))
          fail.record(t, id, "co-weak existential true on an unmarked finite tree", "false",
                      "true");
        ++checked;
        break;
      }
    }
  }

  EquivReport rep;
  rep.models = checked;
  if (fail.failed) {
    rep.status = EquivReport::Status::Fail;
    rep.counterexample = fail.ce;
  }
  rep.notes.push_back(std::string("suite=") + lemma_suite_name(name));
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

IndistResult indist_experiment(int n, int depth, uint64_t max_formula_size) {
  if (n < 2) throw std::invalid_argument("indist_experiment: n must be at least 2");
  auto t0 = std::chrono::steady_clock::now();
  TreeModel d = gen_d(n, depth);
  TreeModel nd = gen_nd(n, depth);
  EvalConfig cfg;
  IndistResult out;
  uint32_t max_grade = static_cast<uint32_t>(max_formula_size);
  for (const auto& f : enum_cctl_states(max_formula_size, {}, max_grade)) {
    IndistRow row;
    row.formula = print(f);
    row.size = cctl_size(f);
    row.on_d = eval_cctl(f, d, d.root, cfg);
    row.on_nd = eval_cctl(f, nd, nd.root, cfg);
    if (row.on_d != row.on_nd && row.size < static_cast<uint64_t>(n)) ++out.disagreements_below_n;
    out.rows.push_back(std::move(row));
  }
  out.report.status = EquivReport::Status::ApproxReport;
  out.report.models = 2;
  out.report.notes.push_back("formulas=" + std::to_string(out.rows.size()));
  out.report.notes.push_back("disagreements_below_n=" + std::to_string(out.disagreements_below_n));
  out.report.notes.push_back("truncation: evaluated on depth-" + std::to_string(depth) +
                             " unfoldings, not the infinite trees");
  if (out.disagreements_below_n > 0) out.report.status = EquivReport::Status::Fail;
  out.report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

EquivReport hcompat_experiment(int n, int depth, int h, uint64_t max_formula_size, int min_pairs,
                               uint64_t seed) {
  if (h < 1 || h > n) throw std::invalid_argument("hcompat_experiment: need 1 <= h <= n");
  auto t0 = std::chrono::steady_clock::now();
  TreeModel t = gen_na(n, depth);
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  EvalConfig weak;
  weak.path_domain = PathDomain::Finite;

  std::vector<CctlPathPtr> formulas;
  for (const auto& p : enum_cctl_paths(max_formula_size, {"a"}, static_cast<uint32_t>(h)))
    if (is_balanced(p)) formulas.push_back(p);

  // the sampled paths keep h levels of lookahead above the horizon so that
  // size-h formulas are never clipped
  int max_depth = depth - h;
  std::vector<int> eligible;
  for (int v = 0; v < t.size(); ++v)
    if (t.depth(v) <= max_depth) eligible.push_back(v);
  auto sample_path = [&]() {
    std::vector<int> path{eligible[rng() % eligible.size()]};
    while (true) {
      int last = path.back();
      if (t.depth(last) >= max_depth || t.is_leaf(last) || rng() % 3 == 0) break;
      const auto& ch = t.nodes[last].children;
      path.push_back(ch[rng() % ch.size()]);
    }
    return path;
  };

  EquivReport rep;
  rep.status = EquivReport::Status::ApproxReport;
  int pairs = 0;
  int attempts = 0;
  const int max_attempts = min_pairs * 2000;
  while (pairs < min_pairs && attempts < max_attempts) {
    ++attempts;
    std::vector<int> p1 = sample_path();
    std::vector<int> p2 = sample_path();
    PathStats s1 = path_stats(t, p1);
    PathStats s2 = path_stats(t, p2);
    if (!compat(h, s1, s2)) continue;
    ++pairs;
    for (const auto& f : formulas) {
      bool b1 = eval_cctl_path(f, t, p1, 0, weak);
      bool b2 = eval_cctl_path(f, t, p2, 0, weak);
      if (b1 != b2) {
        rep.status = EquivReport::Status::Fail;
        Counterexample ce;
        ce.model_json = tree_to_json(t);
        ce.detail = "h-compatible paths distinguished by " + print(f);
        ce.lhs_value = b1 ? "true" : "false";
        ce.rhs_value = b2 ? "true" : "false";
        rep.counterexample = ce;
        break;
      }
    }
    if (rep.counterexample) break;
  }
  rep.models = static_cast<uint64_t>(pairs);
  rep.notes.push_back("formulas=" + std::to_string(formulas.size()));
  rep.notes.push_back("pairs=" + std::to_string(pairs));
  rep.notes.push_back("h=" + std::to_string(h));
  if (pairs < min_pairs)
    rep.notes.push_back("sampler exhausted after " + std::to_string(attempts) + " attempts");
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace mtlkit
