#include "ultab/repro.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ultab/bisim.hpp"
#include "ultab/families.hpp"
#include "ultab/heyting.hpp"
#include "ultab/io.hpp"
#include "ultab/morphism.hpp"
#include "ultab/uniformity.hpp"

namespace ultab {

namespace {

struct Evidence {
  ReproResult r;
  explicit Evidence(std::string id) { r.id = std::move(id); r.pass = true; }
  void check(bool ok, const std::string& line) {
    r.pass = r.pass && ok;
    r.evidence.push_back(std::string(ok ? "  ok: " : "  FAIL: ") + line);
  }
  void note(const std::string& line) { r.evidence.push_back("  " + line); }
};

std::string level_str(const BisimLevel& lv) {
  switch (lv.kind) {
    case BisimLevel::Kind::None: return "none";
    case BisimLevel::Kind::Full: return "full";
    default: return std::to_string(lv.level);
  }
}

Model with_vars(const Model& m, std::vector<std::string> vars) {
  return Model(m.frame, std::move(vars), m.color);
}

// ------------------------------------------------------------ criterion 1

ReproResult repro_figure2() {
  Evidence ev("figure2");
  auto [chain, fork] = figure2_pair();
  ev.check(are_k_bisimilar(chain, fork, 1), "chain and fork models are 1-bisimilar");
  ev.check(!are_bisimilar(chain, fork), "pair is not fully bisimilar");
  const BisimLevel lv = max_bisim_level(chain, fork);
  ev.check(lv == BisimLevel::finite(1), "max bisimulation level = " + level_str(lv));
  return ev.r;
}

// ------------------------------------------------------------ criterion 2

ReproResult repro_figure4() {
  Evidence ev("figure4");
  auto pairs = figure4_pairs();
  ev.check(pairs.size() == 5, "five model pairs");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [left, right] = pairs[i];
    const BisimLevel lv = max_bisim_level(left, right);
    ev.check(lv == BisimLevel::finite(2),
             "pair " + std::to_string(i + 1) + " max level = " + level_str(lv));
    const Poset qi = q_poset(static_cast<int>(i) + 1);
    ev.check(is_isomorphic(left.frame, qi),
             "left frame of pair " + std::to_string(i + 1) + " is Q" + std::to_string(i + 1));
    const auto images = pmorphic_images(qi);
    const bool img = std::any_of(images.begin(), images.end(), [&](const Poset& f) {
      return is_isomorphic(f, right.frame);
    });
    ev.check(img, "right frame of pair " + std::to_string(i + 1) + " is an image of Q" +
                      std::to_string(i + 1));
  }
  return ev.r;
}

// ------------------------------------------------------------ criterion 3

ReproResult repro_lemma_mn() {
  Evidence ev("lemma-mn");
  for (int n = 3; n <= 5; ++n)
    for (int k = 1; k + 1 < n; ++k) {
      const BisimLevel lv = max_bisim_level(m_model(n, k), n_model(n, k - 1));
      ev.check(lv == BisimLevel::finite(k),
               "level(M_" + std::to_string(n) + "^" + std::to_string(k) + ", N_" +
                   std::to_string(n) + "^" + std::to_string(k - 1) + ") = " + level_str(lv));
    }
  return ev.r;
}

// ------------------------------------------------------------ criterion 4

ReproResult repro_rn_lemma() {
  Evidence ev("rn-lemma");
  FrameClass fc = frame_closure({rn_prefix(9)});
  ev.note("closure of the prefix-9 ladder frame: " + std::to_string(fc.closure.size()) +
          " frames");
  ModelClass mc = enumerate_models(fc, 1);
  ev.note("reduced 1-variable models over the class: " + std::to_string(mc.models.size()));
  for (int k = 0; k <= 2; ++k) {
    for (int par = 0; par <= 1; ++par) {
      const int prefix = 2 * k + 1 + par;  // P_{2k+1} at level 2k+2, P_{2k+2} at 2k+3
      const int level = 2 * k + 2 + par;
      const Model canon = with_vars(rn_canonical_model(prefix), {"p1"});
      int hits = 0;
      bool all_iso = true;
      for (const Model& m : mc.models) {
        if (!are_k_bisimilar(m, canon, level)) continue;
        ++hits;
        if (!find_isomorphism_colored(m.frame, m.color, canon.frame, canon.color))
          all_iso = false;
      }
      ev.check(hits >= 1 && all_iso,
               "every model " + std::to_string(level) + "-bisimilar to the canonical P" +
                   std::to_string(prefix) + " model is isomorphic to it (" +
                   std::to_string(hits) + " hit)");
    }
  }
  return ev.r;
}

// ------------------------------------------------------------ criterion 5

ReproResult repro_degrees() {
  Evidence ev("degrees");
  {
    DegreeReport d = degree_of_uniformity(Poset::chain(2));
    ev.check(d.degree == 1, "degree(2-chain) = " + std::to_string(d.degree) + " [" +
                                d.envelope + "]");
  }
  {
    DegreeReport d = degree_of_uniformity(Poset::fork(2));
    ev.check(d.degree == 2, "degree(2-fork) = " + std::to_string(d.degree) + " [" +
                                d.envelope + "]");
  }
  {
    DegreeReport d = degree_of_uniformity(p_star(1));
    ev.check(d.degree == 2, "degree over the rooted members of p_star(1) = " +
                                std::to_string(d.degree) + " [" + d.envelope + "]");
  }
  {
    // lower bound first: the canonical prefix models sit inside the class
    // and realize level exactly 3
    const Model p4 = rn_canonical_model(4), p3 = rn_canonical_model(3);
    const BisimLevel lv = max_bisim_level(p4, p3);
    ev.check(lv == BisimLevel::finite(3),
             "canonical prefix-4/prefix-3 models: level = " + level_str(lv));
    ev.check(is_reduced(p4) && is_reduced(p3), "both witness models are reduced");
    DegreeReport d = degree_of_uniformity(p_star(2));
    ev.check(d.degree == 4, "degree over the rooted members of p_star(2) = " +
                                std::to_string(d.degree) + " [" + d.envelope + "]");
    if (d.witness)
      ev.note("witness pair level " + std::to_string(d.witness->level) + " on frames of " +
              std::to_string(d.witness->left.frame.size()) + " and " +
              std::to_string(d.witness->right.frame.size()) + " points");
  }
  return ev.r;
}

// ------------------------------------------------------------ criterion 6

ReproResult wpl_frames_impl(int max_points) {
  Evidence ev("wpl-frames");
  int boolean_sums = 0, checked = 0;
  bool agree = true;
  std::string bad;
  for (int n = 1; n <= max_points; ++n)
    for (const Poset& p : all_rooted_posets(n)) {
      ++checked;
      bool valid = true;
      for (int i : {1, 2, 3})
        if (jankov_refutes(p, q_poset(i))) { valid = false; break; }
      const bool bs = is_boolean_sum(p);
      if (bs) ++boolean_sums;
      if (valid != bs && bad.empty()) bad = poset_to_json(p, -1);
      agree = agree && valid == bs;
    }
  ev.note("rooted posets with <= " + std::to_string(max_points) + " points: " +
          std::to_string(checked) + " (" + std::to_string(boolean_sums) + " Boolean sums)");
  ev.check(agree, bad.empty()
                      ? "validating J(Q1), J(Q2), J(Q3) coincides with being a Boolean sum"
                      : "counterexample: " + bad);
  return ev.r;
}

ReproResult repro_wpl_frames() { return wpl_frames_impl(6); }

// ------------------------------------------------------------ criterion 7

ReproResult repro_stack_lemma() {
  Evidence ev("stack-lemma");
  int checked = 0, shallow = 0;
  bool agree = true;
  std::string bad;
  for (const Poset& p : boolean_sums_upto(8)) {
    ++checked;
    const bool valid = !jankov_refutes(p, q_poset(4)) && !jankov_refutes(p, q_poset(5));
    const bool low = stack_profile(p).stack_depth <= 1;
    if (low) ++shallow;
    if (valid != low && bad.empty()) bad = poset_to_json(p, -1);
    agree = agree && valid == low;
  }
  ev.note("Boolean sums with <= 8 points: " + std::to_string(checked) + " (" +
          std::to_string(shallow) + " of stack depth <= 1)");
  ev.check(agree, bad.empty()
                      ? "validating J(Q4) and J(Q5) coincides with stack depth <= 1"
                      : "counterexample: " + bad);
  return ev.r;
}

// ------------------------------------------------------------ criterion 8

FrameClass shallow_boolean_sums(int max_points) {
  std::vector<Poset> frames;
  for (Poset& p : boolean_sums_upto(max_points))
    if (stack_profile(p).stack_depth <= 1) frames.push_back(std::move(p));
  return frame_class_of(std::move(frames));
}

ReproResult repro_2uni_cert() {
  Evidence ev("2uni-cert");
  FrameClass fc = shallow_boolean_sums(6);
  ev.note("class: " + std::to_string(fc.closure.size()) +
          " Boolean sums of stack depth <= 1 with <= 6 points");
  UniformityReport two = certify_n_uniform(fc, 2);
  ev.check(two.certified, "certified 2-uniform over " + two.envelope + " (" +
                              std::to_string(two.pairs_checked) + " pairs)");
  UniformityReport one = certify_n_uniform(fc, 1);
  ev.check(!one.certified && one.witness, "refuted at n = 1");
  if (one.witness) {
    ev.note("witness level " + std::to_string(one.witness->level) + ": " +
            model_to_json(one.witness->left, -1));
    ev.note("              vs " + model_to_json(one.witness->right, -1));
  }
  return ev.r;
}

// ------------------------------------------------------------ criterion 9

ReproResult repro_combs() {
  Evidence ev("combs");
  for (int n = 1; n <= 4; ++n) {
    std::set<std::vector<std::uint64_t>> images, brokens;
    for (const Poset& img : pmorphic_images(comb(n))) images.insert(canonical_form(img).code);
    for (int m = 1; m <= n; ++m)
      for (const Poset& b : broken_combs(m)) brokens.insert(canonical_form(b).code);
    ev.check(images == brokens, "images of the " + std::to_string(n) +
                                    "-comb are exactly the broken combs with spine <= " +
                                    std::to_string(n) + " (" + std::to_string(images.size()) +
                                    " up to isomorphism)");
  }
  {
    int checked = 0, combs_found = 0;
    bool agree = true;
    std::string bad;
    const AxiomSet lfc = named_axiom("LFC");
    for (int n = 1; n <= 7; ++n)
      for (const Poset& p : all_rooted_posets(n)) {
        ++checked;
        const bool valid = validates_axiomset(p, lfc);
        const bool bc = is_broken_comb(p);
        if (bc) ++combs_found;
        if (valid != bc && bad.empty()) bad = poset_to_json(p, -1);
        agree = agree && valid == bc;
      }
    ev.note("rooted posets with <= 7 points: " + std::to_string(checked) + " (" +
            std::to_string(combs_found) + " broken combs)");
    ev.check(agree, bad.empty() ? "validating the six Jankov axioms coincides with "
                                  "being a broken comb"
                                : "counterexample: " + bad);
  }
  {
    FrameClass fc = frame_class_of(broken_combs_upto(6));
    UniformityReport three = certify_n_uniform(fc, 3);
    ev.check(three.certified, "broken combs <= 6 points: certified 3-uniform over " +
                                  three.envelope);
    UniformityReport two = certify_n_uniform(fc, 2);
    ev.check(!two.certified && two.witness, "refuted at n = 2");
    const auto all_pairs = figure4_pairs();
    const auto& q1 = all_pairs[0];
    ev.check(max_bisim_level(q1.first, q1.second) == BisimLevel::finite(2) &&
                 is_broken_comb(q1.first.frame) && is_broken_comb(q1.second.frame),
             "the tadpole/fork pair lies in the class and realizes level 2");
    FrameClass fc8 = frame_class_of(broken_combs_upto(8));
    SearchOptions v1;
    v1.v_max = 1;
    UniformityReport three8 = certify_n_uniform(fc8, 3, v1);
    ev.check(three8.certified,
             "broken combs <= 8 points: certified 3-uniform over " + three8.envelope);
    SearchOptions v2;
    v2.v_max = 2;
    FrameClass fc7 = frame_class_of(broken_combs_upto(7));
    UniformityReport three7 = certify_n_uniform(fc7, 3, v2);
    ev.check(three7.certified,
             "broken combs <= 7 points: certified 3-uniform over " + three7.envelope);
  }
  return ev.r;
}

// ----------------------------------------------------------- criterion 10

ReproResult repro_wpl_nonuniform() {
  Evidence ev("wpl-nonuniform");
  const AxiomSet wpl = named_axiom("wPL");
  for (int n = 1; n <= 5; ++n) {
    const Model m = m_model(n + 2, n);
    const Model nm = n_model(n + 2, n - 1);
    const BisimLevel lv = max_bisim_level(m, nm);
    const bool frames_ok = validates_axiomset(m.frame, wpl) &&
                           validates_axiomset(nm.frame, wpl) &&
                           is_boolean_sum(m.frame) && is_boolean_sum(nm.frame);
    ev.check(lv == BisimLevel::finite(n) && frames_ok,
             "n = " + std::to_string(n) + ": wPL-frame pair " + std::to_string(n) +
                 "-bisimilar but not bisimilar (level " + level_str(lv) + ")");
  }
  return ev.r;
}

// ----------------------------------------------------------- criterion 11

ReproResult repro_box() {
  Evidence ev("box");
  const AxiomSet box = named_axiom("Box");
  for (int n = 3; n <= 5; ++n) {
    const Poset s = s_frame(n);
    ev.check(validates_axiomset(s, box),
             "S_" + std::to_string(n) + " validates the Box axioms");
  }
  {
    UniformityReport r = stack_bound_uniformity_check(1, 2, 7);
    ev.check(r.certified && r.n == 2, "stack depth <= 1: certified 2-uniform [" +
                                          r.envelope + ", " +
                                          std::to_string(r.pairs_checked) + " pairs]");
  }
  {
    UniformityReport r = stack_bound_uniformity_check(2, 2, 9);
    ev.check(r.certified && r.n == 3, "stack depth <= 2: certified 3-uniform [" +
                                          r.envelope + ", " +
                                          std::to_string(r.pairs_checked) + " pairs]");
  }
  {
    SearchOptions opt;
    UniformityReport r = certify_n_uniform(shallow_boolean_sums(7), 1, opt);
    ev.check(!r.certified, "stack depth <= 1 is not 1-uniform (witness level " +
                               std::to_string(r.witness ? r.witness->level : -1) + ")");
  }
  return ev.r;
}

// ----------------------------------------------------------- criterion 12

ReproResult repro_yankov() {
  Evidence ev("yankov");
  const std::vector<std::pair<std::string, Poset>> targets = {
      {"point", Poset::point()}, {"2-chain", Poset::chain(2)}, {"2-fork", Poset::fork(2)}};
  for (const auto& [label, q] : targets) {
    int checked = 0;
    bool agree = true;
    std::string bad;
    for (int n = 1; n <= 6; ++n)
      for (const Poset& p : all_rooted_posets(n)) {
        if (count_upsets(p) > 32) continue;
        ++checked;
        const bool syntactic = jankov_syntactic_validates(p, q);
        const bool semantic = !jankov_refutes(p, q).has_value();
        if (syntactic != semantic && bad.empty()) bad = poset_to_json(p, -1);
        agree = agree && syntactic == semantic;
      }
    ev.check(agree, "syntactic and semantic Jankov checks agree for Q = " + label + " on " +
                        std::to_string(checked) + " rooted frames" +
                        (bad.empty() ? "" : "; counterexample " + bad));
  }
  return ev.r;
}

// ----------------------------------------------------------- criterion 13

ReproResult repro_properties() {
  Evidence ev("properties");
  {  // residuation on a spread of small posets
    bool ok = true;
    for (const Poset& p : {Poset::chain(3), Poset::fork(3), q_poset(3), q_poset(5), comb(3)}) {
      const auto ups = all_upsets(p);
      for (Mask u : ups)
        for (Mask v : ups) {
          const Mask imp = heyting_implies(p, u, v);
          for (Mask w : ups)
            ok = ok && (((w & ~imp) == 0) == (((w & u) & ~v) == 0));
        }
    }
    ev.check(ok, "residuation: W <= U -> V iff W meet U <= V");
  }
  {  // antitone levels and stabilization at |M|*|N|
    bool antitone = true, stabilize = true;
    const auto frames = all_rooted_posets(3);
    std::vector<Model> models;
    for (const Poset& f : frames)
      for (const Model& m : all_models(f, {"p1", "p2"}))
        if (is_reduced(m)) models.push_back(m);
    for (std::size_t i = 0; i < models.size(); ++i)
      for (std::size_t j = i; j < models.size(); ++j) {
        const Model &a = models[i], &b = models[j];
        const int cut = a.frame.size() * b.frame.size();
        LayeredBisim lb = layered_bisim(a, b, cut);
        for (std::size_t l = 1; l < lb.levels.size(); ++l)
          for (int w = 0; w < a.frame.size(); ++w)
            antitone = antitone && (lb.levels[l].rows[w] & ~lb.levels[l - 1].rows[w]) == 0;
        if (are_k_bisimilar(a, b, cut)) stabilize = stabilize && are_bisimilar(a, b);
      }
    ev.note("models over 3-point rooted frames, 2 variables: " +
            std::to_string(models.size()));
    ev.check(antitone, "levels form a decreasing chain");
    ev.check(stabilize, "k-bisimilarity at k = |M|*|N| implies full bisimilarity");
  }
  {  // reduced + bisimilar => isomorphic, exhaustively at <= 5 points
    bool ok = true;
    std::vector<Model> models;
    for (int n = 1; n <= 5; ++n)
      for (const Poset& f : all_rooted_posets(n))
        for (const Model& m : all_models(f, {"p1", "p2"}))
          if (is_reduced(m)) models.push_back(m);
    ev.note("reduced models with <= 5 points, 2 variables: " + std::to_string(models.size()));
    for (std::size_t i = 0; i < models.size() && ok; ++i)
      for (std::size_t j = i + 1; j < models.size() && ok; ++j)
        if (are_bisimilar(models[i], models[j]))
          ok = find_isomorphism_colored(models[i].frame, models[i].color, models[j].frame,
                                        models[j].color)
                   .has_value();
    ev.check(ok, "reduced bisimilar pairs are isomorphic");
  }
  {  // degree <= 2*depth - 1 for every rooted poset with <= 6 points
    bool ok = true;
    std::string bad;
    for (int n = 1; n <= 6 && ok; ++n)
      for (const Poset& p : all_rooted_posets(n)) {
        const DegreeReport d = degree_of_uniformity(p);
        if (d.degree > 2 * p.depth() - 1) {
          ok = false;
          bad = poset_to_json(p, -1) + " degree " + std::to_string(d.degree);
          break;
        }
      }
    ev.check(ok, bad.empty() ? "degree of uniformity <= 2*depth - 1 on rooted posets "
                               "with <= 6 points"
                             : "violated: " + bad);
  }
  {  // chains have degree <= 2
    bool ok = true;
    for (int n = 1; n <= 6; ++n) ok = ok && degree_of_uniformity(Poset::chain(n)).degree <= 2;
    ev.check(ok, "chains up to 6 points have degree <= 2");
  }
  {  // product generation depth against the component maximum, sampled
    bool all_equal = true;
    long long sampled = 0, agreed = 0;
    std::vector<std::string> rows;
    const std::vector<Poset> parts = {Poset::chain(2), Poset::chain(3), Poset::fork(2),
                                      q_poset(6)};
    auto world_list = [](const Poset& u, Mask m) {
      std::string s = "{";
      for (int w = 0; w < u.size(); ++w)
        if (m & bit(w)) s += (s.size() > 1 ? " " : "") + u.name(w);
      return s + "}";
    };
    for (const Poset& p : parts)
      for (const Poset& q : parts) {
        const Poset u = disjoint_union(p, q);
        // paired generators (g_p, g_q) over proper component upsets
        for (Mask gp : all_upsets(p))
          for (Mask gq : all_upsets(q)) {
            if (gp == 0 || gp == p.all() || gq == 0 || gq == q.all()) continue;
            const Mask joint = gp | (gq << p.size());
            const ProductDepthCheck c = product_generation_depth_check(p, q, {joint});
            ++sampled;
            if (c.equal) ++agreed;
            if (!c.equal && rows.size() < 2)
              rows.push_back("union depth " + std::to_string(c.union_depth) +
                             " vs components " + std::to_string(c.depth_p) + "," +
                             std::to_string(c.depth_q) + " for generator " +
                             world_list(u, joint) + " on " + poset_to_json(p, -1) + " + " +
                             poset_to_json(q, -1));
            all_equal = all_equal && c.equal;
          }
      }
    ev.note("sampled paired generators: " + std::to_string(sampled) + ", equality held on " +
            std::to_string(agreed));
    for (const auto& row : rows) ev.note(row);
    ev.check(all_equal, "generation depth over disjoint unions equals the component maximum "
                        "on all sampled generator pairs");
  }
  return ev.r;
}

}  // namespace

const std::vector<ReproTarget>& repro_targets() {
  static const std::vector<ReproTarget> targets = {
      {"figure2", "two-point chain vs fork: 1-bisimilar, not bisimilar", repro_figure2},
      {"figure4", "five 2-bisimilar non-bisimilar pairs over Q1..Q5", repro_figure4},
      {"lemma-mn", "ladder models: level(M_n^k, N_n^{k-1}) = k", repro_lemma_mn},
      {"rn-lemma", "prefix models are pinned by their bisimulation level", repro_rn_lemma},
      {"degrees", "degrees of uniformity: chain 1, fork 2, p*_1 2, p*_2 4", repro_degrees},
      {"wpl-frames", "rooted frames of wPL = Boolean sums (<= 6 points)", repro_wpl_frames},
      {"stack-lemma", "J(Q4) & J(Q5) on Boolean sums = stack depth <= 1 (<= 8 points)",
       repro_stack_lemma},
      {"2uni-cert", "shallow Boolean sums: 2-uniform certified, 1-uniform refuted",
       repro_2uni_cert},
      {"combs", "comb images, the broken-comb axiomatization, 3-uniformity", repro_combs},
      {"wpl-nonuniform", "wPL model pairs n-bisimilar but not bisimilar for n <= 5",
       repro_wpl_nonuniform},
      {"box", "S_n validates Box; bounded stack depth gives (k+1)-uniformity", repro_box},
      {"yankov", "syntactic vs semantic Jankov validity cross-check", repro_yankov},
      {"properties", "algebraic and bisimulation property suites", repro_properties},
  };
  return targets;
}

ReproResult run_repro(const std::string& id) {
  for (const auto& t : repro_targets())
    if (t.id == id) return t.run();
  throw std::invalid_argument("unknown repro target: " + id);
}

ReproResult run_lemma_mn_instance(int n, int k) {
  Evidence ev("lemma-mn");
  const BisimLevel lv = max_bisim_level(m_model(n, k), n_model(n, k - 1));
  ev.check(lv == BisimLevel::finite(k),
           "level(M_" + std::to_string(n) + "^" + std::to_string(k) + ", N_" +
               std::to_string(n) + "^" + std::to_string(k - 1) + ") = " + level_str(lv));
  return ev.r;
}

ReproResult run_wpl_frames_upto(int max_points) { return wpl_frames_impl(max_points); }

}  // namespace ultab
