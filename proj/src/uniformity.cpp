#include "ultab/uniformity.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <set>

#include "ultab/families.hpp"
#include "ultab/morphism.hpp"

namespace ultab {

namespace {

std::vector<Poset> sort_canonical(std::map<CanonicalForm, Poset>&& seen) {
  std::vector<std::pair<CanonicalForm, Poset>> items;
  for (auto& [cf, p] : seen) items.emplace_back(cf, std::move(p));
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.first < b.first;
  });
  std::vector<Poset> out;
  for (auto& [cf, p] : items) out.push_back(std::move(p));
  return out;
}

}  // namespace

FrameClass frame_closure(std::vector<Poset> gens, std::size_t image_cap,
                         std::size_t frame_cap) {
  std::map<CanonicalForm, Poset> seen;
  std::vector<Poset> work;
  for (const Poset& g : gens)
    for (int x = 0; x < g.size(); ++x) work.push_back(principal_upset(g, x));
  while (!work.empty()) {
    Poset p = std::move(work.back());
    work.pop_back();
    for (Poset& img : pmorphic_images(p, image_cap)) {
      auto cf = canonical_form(img);
      if (seen.count(cf)) continue;
      if (seen.size() >= frame_cap) throw CapExceeded("frame closure cap exceeded");
      // principal upsets of a fresh member can reach new frames
      for (int x = 0; x < img.size(); ++x)
        if (img.up(x) != img.all()) work.push_back(principal_upset(img, x));
      seen.emplace(std::move(cf), std::move(img));
    }
  }
  FrameClass fc;
  fc.generators = std::move(gens);
  fc.closure = sort_canonical(std::move(seen));
  return fc;
}

FrameClass frame_class_of(std::vector<Poset> frames, bool verify,
                          std::size_t image_cap) {
  std::map<CanonicalForm, Poset> seen;
  for (Poset& p : frames) {
    p.root_or_throw();
    seen.emplace(canonical_form(p), std::move(p));
  }
  FrameClass fc;
  fc.closure = sort_canonical(std::move(seen));
  fc.generators = fc.closure;
  if (verify) {
    std::set<CanonicalForm> forms;
    for (const Poset& p : fc.closure) forms.insert(canonical_form(p));
    for (const Poset& p : fc.closure)
      for (int x = 0; x < p.size(); ++x)
        for (const Poset& img : pmorphic_images(principal_upset(p, x), image_cap))
          if (!forms.count(canonical_form(img)))
            throw std::invalid_argument("frame family is not closed under images of upsets");
  }
  return fc;
}

ModelClass enumerate_models(const FrameClass& fc, int vars, std::size_t cap) {
  std::vector<std::string> names;
  for (int i = 1; i <= vars; ++i) names.push_back("p" + std::to_string(i));
  ModelClass mc;
  mc.var_count = vars;
  std::set<CanonicalForm> seen;
  for (const Poset& f : fc.closure)
    for (Model& m : all_models(f, names, cap)) {
      if (!is_reduced(m)) continue;
      if (mc.models.size() >= cap) throw CapExceeded("model class cap exceeded");
      if (seen.insert(m.canonical()).second) mc.models.push_back(std::move(m));
    }
  return mc;
}

// ------------------------------------------------------ pattern pair search
//
// A pair of reduced models over any common variable set induces a joint
// "pattern": the partition of the two frames' worlds into equal-color
// classes, together with the containments forced by monotonicity. Bisimilarity
// levels, reducedness and colored isomorphism depend only on that pattern, and
// every realizable pattern is realized concretely by mapping each class to its
// down-set in the containment order. Enumerating patterns therefore covers
// every variable count at once.

namespace {

using WitnessFactory = std::function<WitnessPair()>;

struct PatternSearch {
  const Poset& f1;
  const Poset& f2;
  int n1, n2, total;
  std::vector<int> cls;          // class per point (f1 worlds then f2)
  std::vector<Mask> reach;       // reach[c] = classes above c, incl. c
  std::vector<Mask> differ;      // per point: earlier points needing a different class
  std::vector<std::pair<Mask, Mask>> order_lo;  // earlier points below/above this one
  std::vector<int> order, pos;
  std::vector<Color> l1, l2;     // class labels per world, reused
  int classes = 0;
  long long leaves = 0;
  std::unordered_map<std::uint64_t, bool> reduced_memo;  // second-model patterns

  // leaf callback: exact level plus a lazy witness builder; true stops
  std::function<bool(BisimLevel, const WitnessFactory&)> leaf;

  PatternSearch(const Poset& a, const Poset& b) : f1(a), f2(b) {
    n1 = a.size();
    n2 = b.size();
    total = n1 + n2;
  }

  const Poset& frame_of(int pt) const { return pt < n1 ? f1 : f2; }
  int local(int pt) const { return pt < n1 ? pt : pt - n1; }

  // all of f1 root-first, then all of f2 root-first, so the first model's
  // reducedness prunes before the second model unfolds
  void make_order() {
    order.clear();
    order.push_back(f1.root_or_throw());
    for (int w = 0; w < n1; ++w)
      if (w != f1.root_or_throw()) order.push_back(w);
    order.push_back(n1 + f2.root_or_throw());
    for (int w = 0; w < n2; ++w)
      if (w != f2.root_or_throw()) order.push_back(n1 + w);
  }

  bool run() {
    cls.assign(total, -1);
    reach.clear();
    l1.assign(n1, 0);
    l2.assign(n2, 0);
    // color-difference constraints necessary in any reduced model: equal
    // strict upsets, and a point against its unique cover
    auto must_differ = [&](const Poset& f, int a, int b) {
      if (f.strict_up(a) == f.strict_up(b)) return true;
      if (f.covers_above(a) == bit(b) || f.covers_above(b) == bit(a)) return true;
      return false;
    };
    make_order();
    pos.assign(total, 0);
    for (int i = 0; i < total; ++i) pos[order[i]] = i;
    differ.assign(total, 0);
    order_lo.assign(total, {0, 0});
    for (int i = 0; i < total; ++i) {
      const int p = order[i];
      for (int j = 0; j < i; ++j) {
        const int q = order[j];
        if ((p < n1) != (q < n1)) continue;
        const Poset& f = frame_of(p);
        if (must_differ(f, local(p), local(q))) differ[p] |= bit(j);
        if (f.leq(local(q), local(p))) order_lo[p].first |= bit(j);
        if (f.leq(local(p), local(q))) order_lo[p].second |= bit(j);
      }
    }
    return assign(0);
  }

  bool add_edge(int u, int v) {  // u below v in the color order; false on cycle
    if (u == v) return true;
    if (reach[v] & bit(u)) return false;
    if (reach[u] & bit(v)) return true;
    for (int c = 0; c < classes; ++c)
      if (reach[c] & bit(u)) reach[c] |= reach[v];
    return true;
  }

  bool assign(int idx) {
    if (idx == n1) {
      // the first model's pattern is complete; prune irreducible prefixes
      for (int w = 0; w < n1; ++w) l1[w] = static_cast<Color>(cls[w]);
      if (!is_reduced_labeled(f1, l1)) return false;
    }
    if (idx == total) return emit();
    const int p = order[idx];
    const bool pinned_root = idx == n1;  // second root shares the first's class
    const int limit = pinned_root ? 1 : std::min(classes + 1, total);
    for (int c = 0; c < limit; ++c) {
      bool fresh = c == classes;
      // reuse forbidden across a must-differ pair
      bool bad = false;
      for (Mask t = differ[p]; t && !bad; t &= t - 1)
        if (cls[order[lowest_bit(t)]] == c) bad = true;
      if (bad) continue;
      auto saved_reach = reach;
      const int saved_classes = classes;
      if (fresh) {
        reach.push_back(bit(classes));
        ++classes;
      }
      bool ok = true;
      for (Mask t = order_lo[p].first; ok && t; t &= t - 1)
        ok = add_edge(cls[order[lowest_bit(t)]], c);
      for (Mask t = order_lo[p].second; ok && t; t &= t - 1)
        ok = add_edge(c, cls[order[lowest_bit(t)]]);
      if (ok) {
        cls[p] = c;
        if (assign(idx + 1)) return true;
        cls[p] = -1;
      }
      reach = std::move(saved_reach);
      classes = saved_classes;
    }
    return false;
  }

  WitnessPair realize(BisimLevel lv) const {
    if (classes > 31) throw std::logic_error("witness pattern too wide to realize");
    // each class becomes its down-set in the containment order, so distinct
    // classes get distinct colors and all required containments hold
    std::vector<Color> class_color(classes, 0);
    for (int c = 0; c < classes; ++c)
      for (int d = 0; d < classes; ++d)
        if (reach[d] & bit(c)) class_color[c] |= Color{1} << d;
    std::vector<std::string> vars;
    for (int i = 0; i < classes; ++i) vars.push_back("c" + std::to_string(i));
    std::vector<Color> col1(n1), col2(n2);
    for (int w = 0; w < n1; ++w) col1[w] = class_color[cls[w]];
    for (int w = 0; w < n2; ++w) col2[w] = class_color[cls[n1 + w]];
    return WitnessPair{Model(f1, vars, std::move(col1)), Model(f2, vars, std::move(col2)),
                       lv.level};
  }

  bool second_reduced() {
    if (n2 > 12 || classes > 31) return is_reduced_labeled(f2, l2);
    std::uint64_t key = 0;
    for (int w = 0; w < n2; ++w) key = (key << 5) | l2[w];
    const auto it = reduced_memo.find(key);
    if (it != reduced_memo.end()) return it->second;
    const bool r = is_reduced_labeled(f2, l2);
    reduced_memo.emplace(key, r);
    return r;
  }

  bool emit() {
    ++leaves;
    for (int w = 0; w < n2; ++w) l2[w] = static_cast<Color>(cls[n1 + w]);
    if (!second_reduced()) return false;
    if (&f1 == &f2 &&
        canonical_form_colored(f1, l1) == canonical_form_colored(f2, l2))
      return false;
    BisimLevel lv = max_bisim_level_labeled(f1, l1, f1.root_or_throw(), f2, l2,
                                            f2.root_or_throw());
    if (lv.kind == BisimLevel::Kind::Full)
      throw std::logic_error("reduced fully-bisimilar pair that is not isomorphic");
    return leaf(lv, [&] { return realize(lv); });
  }
};

struct PairScan {
  long long pairs = 0;
  int best_level = -1;
  std::optional<WitnessPair> best;

  // returns a callback that keeps the first pair reaching a strictly higher
  // level; stops when `stop_at` is reached (certification refutation)
  auto tracker(int stop_at = -1) {
    return [this, stop_at](BisimLevel lv, const WitnessFactory& make) {
      ++pairs;
      if (lv.kind == BisimLevel::Kind::Finite && lv.level > best_level) {
        best_level = lv.level;
        best = make();
      }
      return stop_at >= 0 && best_level >= stop_at;
    };
  }
};

void scan_patterns(const FrameClass& fc, PairScan& scan, int stop_at = -1) {
  const auto& frames = fc.closure;
  for (std::size_t i = 0; i < frames.size(); ++i)
    for (std::size_t j = i; j < frames.size(); ++j) {
      PatternSearch ps(frames[i], frames[j]);
      ps.leaf = scan.tracker(stop_at);
      if (ps.run()) return;
    }
}

void scan_concrete(const FrameClass& fc, int v, std::size_t cap, PairScan& scan,
                   int stop_at = -1) {
  ModelClass mc = enumerate_models(fc, v, cap);
  auto cb = scan.tracker(stop_at);
  for (std::size_t i = 0; i < mc.models.size(); ++i)
    for (std::size_t j = i + 1; j < mc.models.size(); ++j) {
      BisimLevel lv = max_bisim_level(mc.models[i], mc.models[j]);
      if (lv.kind == BisimLevel::Kind::Full)
        throw std::logic_error("reduced fully-bisimilar pair that is not isomorphic");
      const WitnessFactory make = [&] {
        return WitnessPair{mc.models[i], mc.models[j], lv.level};
      };
      if (cb(lv, make)) return;
    }
}

std::string envelope_text(const FrameClass& fc, const SearchOptions& opt) {
  int max_pts = 0;
  for (const Poset& p : fc.closure) max_pts = std::max(max_pts, p.size());
  std::string env = std::to_string(fc.closure.size()) + " frames (up to " +
                    std::to_string(max_pts) + " points), ";
  if (opt.v_max < 0)
    env += "joint color patterns (every variable count)";
  else
    env += std::to_string(opt.v_max) + " variables";
  return env;
}

}  // namespace

DegreeReport degree_of_uniformity(const FrameClass& fc, const SearchOptions& opt) {
  PairScan scan;
  if (opt.v_max < 0)
    scan_patterns(fc, scan);
  else
    scan_concrete(fc, opt.v_max, opt.model_cap, scan);
  DegreeReport r;
  r.degree = scan.best_level + 1;
  r.witness = scan.best;
  r.envelope = envelope_text(fc, opt);
  r.pairs_checked = scan.pairs;
  return r;
}

DegreeReport degree_of_uniformity(const Poset& p, const SearchOptions& opt) {
  return degree_of_uniformity(frame_closure({p}), opt);
}

UniformityReport certify_n_uniform(const FrameClass& fc, int n,
                                   const SearchOptions& opt) {
  PairScan scan;
  if (opt.v_max < 0)
    scan_patterns(fc, scan, n);
  else
    scan_concrete(fc, opt.v_max, opt.model_cap, scan, n);
  UniformityReport r;
  r.n = n;
  r.certified = scan.best_level < n;
  if (!r.certified) r.witness = scan.best;
  r.envelope = envelope_text(fc, opt);
  r.pairs_checked = scan.pairs;
  return r;
}

UniformityReport stack_bound_uniformity_check(int k, int width_cap, int size_cap,
                                              const SearchOptions& opt) {
  std::vector<Poset> frames;
  for (Poset& p : boolean_sums_upto(size_cap, width_cap)) {
    const StackProfile sp = stack_profile(p);
    if (sp.stack_depth > k) continue;
    if (sp.level_sizes.front() != 1) continue;  // single maximal point
    frames.push_back(std::move(p));
  }
  FrameClass fc = frame_class_of(std::move(frames), /*verify=*/true);
  UniformityReport r = certify_n_uniform(fc, k + 1, opt);
  r.envelope += "; Boolean sums, width <= " + std::to_string(width_cap) +
                ", one maximal point, stack depth <= " + std::to_string(k) +
                ", <= " + std::to_string(size_cap) + " points";
  return r;
}

}  // namespace ultab
