// Command-line front end: poset/model inspection, validity, bisimulation,
// uniformity searches, and the bundled `repro` checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultab/bisim.hpp"
#include "ultab/families.hpp"
#include "ultab/io.hpp"
#include "ultab/morphism.hpp"
#include "ultab/repro.hpp"
#include "ultab/uniformity.hpp"

using namespace ultab;
using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Poset load_poset(const std::string& path) { return poset_from_json(read_input(path)); }
Model load_model(const std::string& path) { return model_from_json(read_input(path)); }

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  return v ? static_cast<std::size_t>(std::stoull(v)) : fallback;
}

std::string level_str(const BisimLevel& lv) {
  switch (lv.kind) {
    case BisimLevel::Kind::None: return "none";
    case BisimLevel::Kind::Full: return "full";
    default: return std::to_string(lv.level);
  }
}

json valuation_json(const Poset& p, const Valuation& v) {
  json out = json::object();
  for (const auto& [var, mask] : v) {
    json worlds = json::array();
    for (int w = 0; w < p.size(); ++w)
      if (mask & bit(w)) worlds.push_back(p.name(w));
    out[var] = worlds;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"finite-model toolkit for superintuitionistic logics"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  const std::size_t upset_cap = env_cap("ULTAB_UPSET_CAP", 1u << 20);
  const std::size_t val_cap = env_cap("ULTAB_VALUATION_CAP", 10'000'000);

  // ---------------------------------------------------------------- poset
  auto* poset_cmd = app.add_subcommand("poset", "inspect a poset file");
  std::string poset_in = "-";
  poset_cmd->add_option("--in", poset_in, "poset json (default stdin)");
  auto* show = poset_cmd->add_subcommand("show", "echo the parsed poset");
  auto* upsets = poset_cmd->add_subcommand("upsets", "count and list upsets");
  auto* depth_cmd = poset_cmd->add_subcommand("depth", "longest chain, in points");
  auto* width_cmd = poset_cmd->add_subcommand("width", "largest antichain in a principal upset");
  auto* dot_cmd = poset_cmd->add_subcommand("dot", "Hasse diagram in dot format");
  poset_cmd->require_subcommand(1);
  poset_cmd->callback([&] {
    const std::string text = read_input(poset_in);
    if (json_is_model(text)) {
      const Model m = model_from_json(text);
      if (show->parsed()) std::cout << model_to_json(m) << "\n";
      if (dot_cmd->parsed()) std::cout << model_to_dot(m);
      if (upsets->parsed() || depth_cmd->parsed() || width_cmd->parsed()) {
        const Poset& p = m.frame;
        if (upsets->parsed()) std::cout << all_upsets(p, upset_cap).size() << "\n";
        if (depth_cmd->parsed()) std::cout << p.depth() << "\n";
        if (width_cmd->parsed()) std::cout << width(p) << "\n";
      }
      return;
    }
    const Poset p = poset_from_json(text);
    if (show->parsed()) std::cout << poset_to_json(p) << "\n";
    if (upsets->parsed()) {
      if (as_json) {
        json lst = json::array();
        for (Mask u : all_upsets(p, upset_cap)) {
          json ws = json::array();
          for (int w = 0; w < p.size(); ++w)
            if (u & bit(w)) ws.push_back(p.name(w));
          lst.push_back(ws);
        }
        std::cout << lst.dump(2) << "\n";
      } else {
        std::cout << all_upsets(p, upset_cap).size() << "\n";
      }
    }
    if (depth_cmd->parsed()) std::cout << p.depth() << "\n";
    if (width_cmd->parsed()) std::cout << width(p) << "\n";
    if (dot_cmd->parsed()) std::cout << poset_to_dot(p);
  });

  // ------------------------------------------------------------- validity
  auto* validity = app.add_subcommand("validity", "frame validity of a formula or axiom set");
  std::string val_poset, val_formula, val_axioms;
  validity->add_option("--poset", val_poset, "frame json")->required();
  validity->add_option("--formula", val_formula, "formula text");
  validity->add_option("--axioms", val_axioms, "named axiom set (LC, wPL, KC, BW2, BDn, 2Uni, LFC, Box)");
  validity->callback([&] {
    const Poset p = load_poset(val_poset);
    if (!val_formula.empty()) {
      const FormulaPtr f = parse_formula(val_formula);
      const ValidityResult r = frame_validates(p, f, val_cap);
      if (as_json) {
        json j{{"valid", r.valid}};
        if (!r.valid) j["countervaluation"] = valuation_json(p, r.countervaluation);
        std::cout << j.dump(2) << "\n";
      } else if (r.valid) {
        std::cout << "valid\n";
      } else {
        std::cout << "invalid, countervaluation " << valuation_json(p, r.countervaluation)
                  << "\n";
      }
      return;
    }
    if (val_axioms.empty()) throw CLI::ValidationError("validity", "need --formula or --axioms");
    const bool ok = validates_axiomset(p, named_axiom(val_axioms), val_cap);
    if (as_json)
      std::cout << json{{"valid", ok}}.dump(2) << "\n";
    else
      std::cout << (ok ? "valid\n" : "invalid\n");
  });

  // --------------------------------------------------------------- jankov
  auto* jankov = app.add_subcommand("jankov", "Jankov-formula refutation check");
  std::string ja_frame, ja_q;
  bool ja_syntactic = false;
  jankov->add_option("--frame", ja_frame, "frame json")->required();
  jankov->add_option("--q", ja_q, "rooted poset json")->required();
  jankov->add_flag("--syntactic", ja_syntactic, "evaluate the syntactic formula instead");
  jankov->callback([&] {
    const Poset p = load_poset(ja_frame);
    const Poset q = load_poset(ja_q);
    if (ja_syntactic) {
      const bool valid = jankov_syntactic_validates(p, q);
      if (as_json)
        std::cout << json{{"validates", valid}}.dump(2) << "\n";
      else
        std::cout << (valid ? "validates J(Q)\n" : "refutes J(Q)\n");
      return;
    }
    const auto w = jankov_refutes(p, q);
    if (as_json) {
      json j{{"refutes", w.has_value()}};
      if (w) {
        j["world"] = p.name(w->world);
        const Poset ux = principal_upset(p, w->world);
        json mp = json::object();
        for (int x = 0; x < ux.size(); ++x) mp[ux.name(x)] = q.name(w->map[x]);
        j["pmorphism"] = mp;
      }
      std::cout << j.dump(2) << "\n";
    } else if (w) {
      std::cout << "refutes J(Q): principal upset of " << p.name(w->world)
                << " maps onto Q\n";
    } else {
      std::cout << "validates J(Q)\n";
    }
  });

  // ---------------------------------------------------------- bisim tools
  auto* bisim = app.add_subcommand("bisim", "(k-)bisimilarity of two models");
  std::string bi_m, bi_n;
  int bi_k = -1;
  bisim->add_option("--m", bi_m, "first model json")->required();
  bisim->add_option("--n", bi_n, "second model json")->required();
  bisim->add_option("--k", bi_k, "round bound; full bisimilarity when omitted");
  bisim->callback([&] {
    const Model m = load_model(bi_m), n = load_model(bi_n);
    const bool yes = bi_k < 0 ? are_bisimilar(m, n) : are_k_bisimilar(m, n, bi_k);
    if (as_json)
      std::cout << json{{"bisimilar", yes}, {"k", bi_k < 0 ? json() : json(bi_k)}}.dump(2)
                << "\n";
    else
      std::cout << (yes ? "bisimilar\n" : "not bisimilar\n");
  });

  auto* maxlevel = app.add_subcommand("maxlevel", "largest k with the models k-bisimilar");
  std::string ml_m, ml_n;
  int ml_cutoff = -1;
  maxlevel->add_option("--m", ml_m)->required();
  maxlevel->add_option("--n", ml_n)->required();
  maxlevel->add_option("--cutoff", ml_cutoff, "level cutoff (default |M|*|N|)");
  maxlevel->callback([&] {
    const BisimLevel lv = max_bisim_level(load_model(ml_m), load_model(ml_n), ml_cutoff);
    if (as_json)
      std::cout << json{{"level", level_str(lv)}}.dump(2) << "\n";
    else
      std::cout << level_str(lv) << "\n";
  });

  auto* reduce_cmd = app.add_subcommand("reduce", "quotient by the greatest auto-bisimulation");
  std::string red_in = "-";
  reduce_cmd->add_option("--in", red_in, "model json (default stdin)");
  reduce_cmd->callback([&] { std::cout << model_to_json(reduce(load_model(red_in))) << "\n"; });

  // --------------------------------------------------------------- degree
  auto* degree = app.add_subcommand("degree", "degree of uniformity of a poset's logic");
  std::string dg_poset, dg_family;
  int dg_n = 1, dg_vmax = -1;
  degree->add_option("--poset", dg_poset, "poset json");
  degree->add_option("--family", dg_family, "family name (p-star, rn, q, comb)");
  degree->add_option("--n", dg_n, "family parameter");
  degree->add_option("--vmax", dg_vmax, "variable bound; patterns over all counts if < 0");
  degree->callback([&] {
    Poset p = Poset::point();
    if (!dg_family.empty()) {
      if (dg_family == "p-star") p = p_star(dg_n);
      else if (dg_family == "rn") p = rn_prefix(dg_n);
      else if (dg_family == "q") p = q_poset(dg_n);
      else if (dg_family == "comb") p = comb(dg_n);
      else throw CLI::ValidationError("degree", "unknown family " + dg_family);
    } else if (!dg_poset.empty()) {
      p = load_poset(dg_poset);
    } else {
      throw CLI::ValidationError("degree", "need --poset or --family");
    }
    SearchOptions opt;
    opt.v_max = dg_vmax;
    const DegreeReport r = degree_of_uniformity(p, opt);
    if (as_json) {
      json j{{"degree", r.degree}, {"envelope", r.envelope}, {"pairs", r.pairs_checked}};
      if (r.witness) {
        j["witness_level"] = r.witness->level;
        j["witness"] = {json::parse(model_to_json(r.witness->left, -1)),
                        json::parse(model_to_json(r.witness->right, -1))};
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << r.degree << "\n";
    }
  });

  // -------------------------------------------------------------- certify
  auto* certify = app.add_subcommand("certify", "bounded n-uniformity certification");
  std::string ct_preset;
  std::vector<std::string> ct_gens;
  int ct_n = 2, ct_max = 6, ct_vmax = -1, ct_stack = 1, ct_width = -1;
  certify->add_option("--preset", ct_preset,
                      "frame family: shallow-boolean-sums | broken-combs | stack-bound");
  certify->add_option("--generators", ct_gens, "poset json files generating the class");
  certify->add_option("--n", ct_n, "uniformity level")->required();
  certify->add_option("--max-points", ct_max, "size bound for preset families");
  certify->add_option("--vmax", ct_vmax, "variable bound; patterns over all counts if < 0");
  certify->add_option("--stack", ct_stack, "stack-depth bound (stack-bound preset)");
  certify->add_option("--width", ct_width, "width bound (stack-bound preset)");
  certify->callback([&] {
    SearchOptions opt;
    opt.v_max = ct_vmax;
    UniformityReport r;
    if (ct_preset == "stack-bound") {
      r = stack_bound_uniformity_check(ct_stack, ct_width < 0 ? 2 : ct_width, ct_max, opt);
    } else if (!ct_preset.empty()) {
      std::vector<Poset> frames;
      if (ct_preset == "shallow-boolean-sums") {
        for (Poset& p : boolean_sums_upto(ct_max))
          if (stack_profile(p).stack_depth <= 1) frames.push_back(std::move(p));
      } else if (ct_preset == "broken-combs") {
        frames = broken_combs_upto(ct_max);
      } else {
        throw CLI::ValidationError("certify", "unknown preset " + ct_preset);
      }
      r = certify_n_uniform(frame_class_of(std::move(frames)), ct_n, opt);
    } else if (!ct_gens.empty()) {
      std::vector<Poset> gens;
      for (const auto& g : ct_gens) gens.push_back(load_poset(g));
      r = certify_n_uniform(frame_closure(std::move(gens)), ct_n, opt);
    } else {
      throw CLI::ValidationError("certify", "need --preset or --generators");
    }
    if (as_json) {
      json j{{"certified", r.certified},
             {"n", r.n},
             {"envelope", r.envelope},
             {"pairs", r.pairs_checked}};
      if (r.witness) {
        j["witness_level"] = r.witness->level;
        j["witness"] = {json::parse(model_to_json(r.witness->left, -1)),
                        json::parse(model_to_json(r.witness->right, -1))};
      }
      std::cout << j.dump(2) << "\n";
    } else if (r.certified) {
      std::cout << "certified " << r.n << "-uniform within: " << r.envelope << "\n";
    } else {
      std::cout << "refuted at n = " << r.n << " (witness level " << r.witness->level
                << ") within: " << r.envelope << "\n";
    }
  });

  // --------------------------------------------------------------- family
  auto* family = app.add_subcommand("family", "emit a bundled poset or model");
  std::string fam_name;
  int fam_i = 1, fam_n = 3, fam_k = 1;
  family->add_option("name", fam_name,
                     "q | rn | rn-model | p-star | p-prime | comb | m-model | n-model | "
                     "s-frame | figure2 | figure4")
      ->required();
  family->add_option("--i", fam_i, "index");
  family->add_option("--n", fam_n, "size parameter");
  family->add_option("--k", fam_k, "layer parameter");
  family->callback([&] {
    if (fam_name == "q") std::cout << poset_to_json(q_poset(fam_i)) << "\n";
    else if (fam_name == "rn") std::cout << poset_to_json(rn_prefix(fam_i)) << "\n";
    else if (fam_name == "rn-model") std::cout << model_to_json(rn_canonical_model(fam_i)) << "\n";
    else if (fam_name == "p-star") std::cout << poset_to_json(p_star(fam_n)) << "\n";
    else if (fam_name == "p-prime") std::cout << poset_to_json(p_prime(fam_i)) << "\n";
    else if (fam_name == "comb") std::cout << poset_to_json(comb(fam_n)) << "\n";
    else if (fam_name == "m-model") std::cout << model_to_json(m_model(fam_n, fam_k)) << "\n";
    else if (fam_name == "n-model") std::cout << model_to_json(n_model(fam_n, fam_k)) << "\n";
    else if (fam_name == "s-frame") std::cout << poset_to_json(s_frame(fam_n)) << "\n";
    else if (fam_name == "figure2") {
      auto [a, b] = figure2_pair();
      std::cout << "[" << model_to_json(a) << ",\n" << model_to_json(b) << "]\n";
    } else if (fam_name == "figure4") {
      auto pairs = figure4_pairs();
      if (fam_i < 1 || fam_i > static_cast<int>(pairs.size()))
        throw CLI::ValidationError("family", "figure4 index must be 1..5");
      std::cout << "[" << model_to_json(pairs[fam_i - 1].first) << ",\n"
                << model_to_json(pairs[fam_i - 1].second) << "]\n";
    } else {
      throw CLI::ValidationError("family", "unknown family " + fam_name);
    }
  });

  // ---------------------------------------------------------------- repro
  auto* repro = app.add_subcommand("repro", "re-derive the bundled finite claims");
  std::string target = "all";
  repro->add_option("target", target, "target id or 'all'");
  bool list = false;
  repro->add_flag("--list", list, "list targets");
  int repro_n = -1, repro_k = -1, repro_max = -1;
  repro->add_option("--n", repro_n, "restrict lemma-mn to one size");
  repro->add_option("--k", repro_k, "restrict lemma-mn to one layer count");
  repro->add_option("--max", repro_max, "size bound for wpl-frames");
  repro->callback([&] {
    if (list) {
      for (const auto& t : repro_targets())
        std::cout << t.id << "  " << t.description << "\n";
      return;
    }
    const bool parameterized = (target == "lemma-mn" && repro_n >= 0 && repro_k >= 0) ||
                               (target == "wpl-frames" && repro_max > 0);
    if (parameterized) {
      const ReproResult r = target == "lemma-mn"
                                ? run_lemma_mn_instance(repro_n, repro_k)
                                : run_wpl_frames_upto(repro_max);
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "\n";
      for (const auto& line : r.evidence) std::cout << line << "\n";
      if (!r.pass) std::exit(1);
      return;
    }
    bool all_pass = true;
    json out = json::array();
    for (const auto& t : repro_targets()) {
      if (target != "all" && target != t.id) continue;
      const ReproResult r = t.run();
      all_pass = all_pass && r.pass;
      if (as_json) {
        out.push_back({{"id", r.id}, {"pass", r.pass}, {"evidence", r.evidence}});
      } else {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "\n";
        for (const auto& line : r.evidence) std::cout << line << "\n";
      }
    }
    if (target != "all" &&
        std::none_of(repro_targets().begin(), repro_targets().end(),
                     [&](const ReproTarget& t) { return t.id == target; }))
      throw CLI::ValidationError("repro", "unknown target " + target);
    if (as_json) std::cout << out.dump(2) << "\n";
    if (!all_pass) std::exit(1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
