#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtlkit/eval.hpp"
#include "mtlkit/formula_ops.hpp"
#include "mtlkit/lab.hpp"
#include "mtlkit/syntax.hpp"
#include "mtlkit/translate.hpp"
#include "mtlkit/tree_model.hpp"

// Command-line entry point.  Exit codes: 0 on success/pass, 1 on a property
// failure, 2 on usage or parse errors.

namespace {

using namespace mtlkit;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string formula_text(const std::string& inline_text, const std::string& file) {
  if (!file.empty()) return slurp(file);
  if (!inline_text.empty()) return inline_text;
  throw CLI::ValidationError("provide a formula or --file");
}

std::vector<std::string> split_ap(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("MTLKIT_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

EvalConfig make_config(const std::string& mode, const std::string& domain, bool horizon,
                       bool relax) {
  EvalConfig cfg;
  if (mode == "full") cfg.mode = QuantMode::Full;
  else if (mode == "weak") cfg.mode = QuantMode::Weak;
  else if (mode == "coweak") cfg.mode = QuantMode::CoWeak;
  else throw CLI::ValidationError("unknown mode: " + mode);
  cfg.path_domain = path_domain_from_name(domain);
  cfg.horizon_enabled = horizon;
  cfg.relax_nonblocking = relax;
  cfg.validate();
  return cfg;
}

nlohmann::json denset_json(const DenSet& s) {
  nlohmann::json j = nlohmann::json::array();
  for (int v : s.elements()) j.push_back(v);
  return j;
}

int run_parse(const std::string& logic, const std::string& text) {
  LogicTag tag = logic_tag_from_name(logic);
  std::cout << print(parse_any(text, tag)) << "\n";
  return 0;
}

int run_translate(const std::string& from, const std::string& text, const std::string& anchor,
                  const std::string& tree_var, bool relax) {
  MsolPtr out;
  if (from == "gmc") {
    out = osgmc_to_mtl(parse_gmc(text), anchor).formula;
  } else if (from == "osafgmc") {
    out = osafgmc_to_wmtl(parse_gmc(text), anchor).formula;
  } else if (from == "cctl") {
    out = cctl_to_mpl(parse_cctl(text), anchor).formula;
  } else if (from == "stl") {
    out = stl_to_mtl(parse_stl(text), tree_var, anchor, relax).formula;
  } else if (from == "mtl-chain") {
    out = mtl_chain_to_fo(parse_msol(text));
  } else if (from == "mtl-cow") {
    out = mtl_to_cowmtl(parse_msol(text));
  } else {
    throw CLI::ValidationError("unknown translation source: " + from);
  }
  std::cout << print(out) << "\n";
  return 0;
}

int run_eval(const std::string& logic, const std::string& text, const std::string& model_path,
             bool kripke, const EvalConfig& cfg, int node, const std::string& anchor) {
  nlohmann::json out;
  LogicTag tag = logic_tag_from_name(logic);
  if (kripke) {
    if (tag != LogicTag::Gmc)
      throw CLI::ValidationError("structure models support only the graded mu-calculus");
    KripkeStructure k = kripke_from_json(slurp(model_path));
    DenSet d = eval_gmc_graph(parse_gmc(text), k, {});
    out["denotation"] = denset_json(d);
    out["init"] = d.test(k.init);
  } else {
    TreeModel t = tree_from_json(slurp(model_path));
    switch (tag) {
      case LogicTag::Gmc: {
        DenSet d = eval_gmc(parse_gmc(text), t, {}, cfg);
        out["denotation"] = denset_json(d);
        out["root"] = d.test(t.root);
        break;
      }
      case LogicTag::Msol: {
        MsolPtr f = parse_msol(text);
        if (!anchor.empty()) {
          DenSet d = denot_msol(f, anchor, t, {}, cfg);
          out["denotation"] = denset_json(d);
          out["root"] = d.test(t.root);
        } else {
          out["result"] = eval_msol(f, t, {}, {}, cfg);
        }
        break;
      }
      case LogicTag::Cctl: {
        CctlStatePtr f = parse_cctl(text);
        if (node >= 0) {
          out["result"] = eval_cctl(f, t, node, cfg);
        } else {
          DenSet d = cctl_denot(f, t, cfg);
          out["denotation"] = denset_json(d);
          out["root"] = d.test(t.root);
        }
        break;
      }
      case LogicTag::Stl: {
        DenSet d = stl_denot(parse_stl(text), t, cfg);
        out["denotation"] = denset_json(d);
        out["root"] = d.test(t.root);
        break;
      }
    }
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int run_gen(const std::string& family, int n, int depth, bool kripke) {
  if (kripke) {
    KripkeStructure k;
    if (family == "nd") k = gen_nd_kripke(n);
    else if (family == "d") k = gen_d_kripke(n);
    else if (family == "a") k = gen_a_kripke(n);
    else if (family == "na") k = gen_na_kripke(n);
    else throw CLI::ValidationError("no structure form for family: " + family);
    std::cout << kripke_to_json(k) << "\n";
    return 0;
  }
  TreeModel t;
  if (family == "nd") t = gen_nd(n, depth);
  else if (family == "d") t = gen_d(n, depth);
  else if (family == "a") t = gen_a(n, depth);
  else if (family == "na") t = gen_na(n, depth);
  else if (family == "chain") t = chain(n);
  else if (family == "binary") t = complete_binary(n);
  else throw CLI::ValidationError("unknown family: " + family);
  std::cout << tree_to_json(t) << "\n";
  return 0;
}

EvalBinding make_binding(const std::string& logic, const std::string& text, const EvalConfig& cfg,
                         const std::string& anchor, const std::string& tree_var) {
  LogicTag tag = logic_tag_from_name(logic);
  switch (tag) {
    case LogicTag::Gmc: return bind_gmc(parse_gmc(text), cfg);
    case LogicTag::Cctl: return bind_cctl(parse_cctl(text), cfg);
    case LogicTag::Stl: return bind_stl(parse_stl(text), cfg);
    case LogicTag::Msol: {
      std::vector<std::string> full;
      if (!tree_var.empty()) full.push_back(tree_var);
      return bind_msol_denot(parse_msol(text), anchor, cfg, full);
    }
  }
  throw std::logic_error("bad tag");
}

int report_exit(const EquivReport& rep) {
  std::cout << rep.to_json() << "\n";
  return rep.status == EquivReport::Status::Fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree-logic workbench"};
  app.require_subcommand(1);

  std::string logic = "msol", text, file;
  std::string from = "gmc", anchor = "x", tree_var = "T";
  std::string model_path, family = "nd", mode = "full", domain = "all";
  bool kripke = false, horizon = false, relax = false;
  int n = 2, depth = 3, node = -1, jobs = default_jobs();
  int max_nodes = 5, samples = 200, pairs = 100, h = 3;
  uint64_t seed = 0, max_size = 3;
  std::string ap = "a", suite_name = "monotonicity", experiment = "indist";
  std::string lhs, lhs_logic = "gmc", rhs, rhs_logic = "msol", rhs_translate;

  auto* p = app.add_subcommand("parse", "echo the canonical form of a formula");
  p->add_option("--logic", logic, "msol|gmc|cctl|stl");
  p->add_option("--file", file, "read the formula from a file");
  p->add_option("formula", text, "formula text");

  auto* tr = app.add_subcommand("translate", "translate a formula into MSOL/FO text");
  tr->add_option("--from", from, "gmc|osafgmc|cctl|stl|mtl-chain|mtl-cow")->required();
  tr->add_option("--anchor", anchor, "anchor first-order variable");
  tr->add_option("--tree-var", tree_var, "current-tree variable for stl");
  tr->add_flag("--relax", relax, "drop the non-blocking side conditions");
  tr->add_option("--file", file, "read the formula from a file");
  tr->add_option("formula", text, "formula text");

  auto* ev = app.add_subcommand("eval", "evaluate a formula on a model file");
  ev->add_option("--logic", logic, "msol|gmc|cctl|stl")->required();
  ev->add_option("--model", model_path, "model JSON file")->required();
  ev->add_flag("--kripke", kripke, "the model file is a structure, not a tree");
  ev->add_option("--mode", mode, "full|weak|coweak");
  ev->add_option("--domain", domain, "all|finite|maximal|infinite-approx");
  ev->add_flag("--horizon", horizon, "enable the horizon convention");
  ev->add_flag("--relax", relax, "relax the non-blocking requirement");
  ev->add_option("--node", node, "evaluate a cctl state formula at this node");
  ev->add_option("--anchor", anchor, "denotation anchor for open msol formulas");
  ev->add_option("--file", file, "read the formula from a file");
  ev->add_option("formula", text, "formula text");

  auto* g = app.add_subcommand("gen", "emit a model of one of the families");
  g->add_option("--family", family, "nd|d|a|na|chain|binary")->required();
  g->add_option("--n", n, "family index / length / depth parameter");
  g->add_option("--depth", depth, "unfolding depth");
  g->add_flag("--kripke", kripke, "emit the finite structure instead of the unfolding");

  auto* eq = app.add_subcommand("equiv", "oracle equivalence over an enumerated corpus");
  eq->add_option("--lhs", lhs, "left formula")->required();
  eq->add_option("--lhs-logic", lhs_logic, "msol|gmc|cctl|stl");
  eq->add_option("--rhs", rhs, "right formula");
  eq->add_option("--rhs-logic", rhs_logic, "msol|gmc|cctl|stl");
  eq->add_option("--rhs-translate", rhs_translate,
                 "derive the right side by translating the left one: "
                 "osgmc|osafgmc|cctl|stl|mtl-chain");
  eq->add_option("--max-nodes", max_nodes, "enumerate trees up to this size");
  eq->add_option("--ap", ap, "comma-separated atomic propositions");
  eq->add_option("--mode", mode, "full|weak|coweak (left side)");
  eq->add_option("--domain", domain, "all|finite|maximal|infinite-approx (left side)");
  eq->add_option("--anchor", anchor, "anchor variable for msol denotations");
  eq->add_option("--jobs", jobs, "worker threads");
  eq->add_option("--seed", seed, "seed (reserved for sampled corpora)");

  auto* su = app.add_subcommand("suite", "run one of the lemma suites");
  su->add_option("--name", suite_name,
                 "monotonicity|independence|shannon|suppression-order|finite-witness|"
                 "graded-duality|mode-coherence")
      ->required();
  su->add_option("--samples", samples, "sampled instances");
  su->add_option("--seed", seed, "sampling seed");
  su->add_option("--max-nodes", max_nodes, "corpus bound");
  su->add_option("--ap", ap, "comma-separated atomic propositions");

  auto* ex = app.add_subcommand("experiment", "distinguishability experiments");
  ex->add_option("--name", experiment, "indist|hcompat")->required();
  ex->add_option("--n", n, "family index");
  ex->add_option("--depth", depth, "unfolding depth");
  ex->add_option("--max-size", max_size, "formula size bound");
  ex->add_option("--h", h, "compatibility index");
  ex->add_option("--pairs", pairs, "compatible pairs to sample");
  ex->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);

    if (p->parsed()) return run_parse(logic, formula_text(text, file));
    if (tr->parsed()) return run_translate(from, formula_text(text, file), anchor, tree_var, relax);
    if (ev->parsed()) {
      EvalConfig cfg = make_config(mode, domain, horizon, relax);
      return run_eval(logic, formula_text(text, file), model_path, kripke, cfg, node,
                      ev->count("--anchor") ? anchor : "");
    }
    if (g->parsed()) return run_gen(family, n, depth, kripke);
    if (eq->parsed()) {
      Corpus corpus;
      corpus.max_nodes = max_nodes;
      corpus.ap = split_ap(ap);
      corpus.seed = seed;
      EvalConfig lcfg = make_config(mode, domain, horizon, relax);
      EvalBinding lb = make_binding(lhs_logic, lhs, lcfg, anchor, "");
      EvalBinding rb;
      if (!rhs_translate.empty()) {
        EvalConfig rcfg;
        if (rhs_translate == "osgmc") {
          rb = bind_msol_denot(osgmc_to_mtl(parse_gmc(lhs), anchor).formula, anchor, rcfg);
        } else if (rhs_translate == "osafgmc") {
          rcfg.mode = QuantMode::Weak;
          rb = bind_msol_denot(osafgmc_to_wmtl(parse_gmc(lhs), anchor).formula, anchor, rcfg);
        } else if (rhs_translate == "cctl") {
          rb = bind_msol_denot(cctl_to_mpl(parse_cctl(lhs), anchor).formula, anchor, rcfg);
        } else if (rhs_translate == "stl") {
          rb = bind_msol_denot(stl_to_mtl(parse_stl(lhs), tree_var, anchor, true).formula, anchor,
                               rcfg, {tree_var});
        } else if (rhs_translate == "mtl-chain") {
          rb = bind_msol_denot(mtl_chain_to_fo(parse_msol(lhs)), anchor, rcfg);
        } else {
          throw CLI::ValidationError("unknown --rhs-translate: " + rhs_translate);
        }
      } else {
        if (rhs.empty()) throw CLI::ValidationError("provide --rhs or --rhs-translate");
        rb = make_binding(rhs_logic, rhs, EvalConfig{}, anchor, tree_var);
      }
      return report_exit(equiv_check(lb, rb, corpus, jobs));
    }
    if (su->parsed()) {
      Corpus corpus;
      corpus.max_nodes = max_nodes;
      corpus.ap = split_ap(ap);
      corpus.seed = seed;
      return report_exit(lemma_suite(lemma_suite_from_name(suite_name), corpus, samples, seed));
    }
    if (ex->parsed()) {
      if (experiment == "indist") {
        IndistResult res = indist_experiment(n, depth, max_size);
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : res.rows)
          rows.push_back({{"formula", r.formula},
                          {"size", r.size},
                          {"on_d", r.on_d},
                          {"on_nd", r.on_nd}});
        nlohmann::json out = nlohmann::json::parse(res.report.to_json());
        out["rows"] = std::move(rows);
        std::cout << out.dump() << "\n";
        return res.report.status == EquivReport::Status::Fail ? 1 : 0;
      }
      if (experiment == "hcompat")
        return report_exit(hcompat_experiment(n, depth, h, max_size, pairs, seed));
      throw CLI::ValidationError("unknown experiment: " + experiment);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error at offset " << e.span.begin << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
