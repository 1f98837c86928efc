#include "ultab/families.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ultab {

namespace {

// worlds: "1", "0", then "P1".."Pi"; index of "Pk" is k+1
Poset rn_ladder(int i) {
  if (i < 1) throw std::invalid_argument("ladder needs at least P1");
  std::vector<std::string> names{"1", "0"};
  for (int k = 1; k <= i; ++k) names.push_back("P" + std::to_string(k));
  auto idx = [](int k) { return k == -1 ? 0 : k == 0 ? 1 : k + 1; };  // P0 = "0", P-1 = "1"
  std::vector<std::pair<int, int>> covers;
  for (int j = 1; j <= i; ++j) {
    if (j == 1) {
      covers.emplace_back(idx(1), idx(-1));
    } else {
      covers.emplace_back(idx(j), idx(j - 2));
      covers.emplace_back(idx(j), idx(j - 3));
    }
  }
  return Poset::from_covers(std::move(names), covers);
}

}  // namespace

Poset rn_prefix(int i, int cap) {
  if (i < 1 || i > cap) throw std::invalid_argument("rn_prefix index out of range");
  Poset ladder = rn_ladder(i);
  return principal_upset(ladder, ladder.index_of("P" + std::to_string(i)));
}

Model rn_canonical_model(int i) {
  Poset f = rn_prefix(i);
  std::vector<Color> color(f.size(), 0);
  color[f.index_of("1")] = 1;
  return Model(std::move(f), {"p"}, std::move(color));
}

Poset p_star(int n) {
  if (n < 1) throw std::invalid_argument("p_star index out of range");
  Poset ladder = rn_ladder(2 * n);
  const Mask gens = bit(ladder.index_of("P" + std::to_string(2 * n))) |
                    bit(ladder.index_of("P" + std::to_string(2 * n - 1)));
  return subposet(ladder, up_closure(ladder, gens));
}

namespace {

Poset add_top(const Poset& p, const std::string& top_name) {
  const int n = p.size();
  std::vector<std::string> names = p.names();
  names.push_back(top_name);
  std::vector<Mask> up(n + 1);
  for (int i = 0; i < n; ++i) up[i] = p.up(i) | bit(n);
  up[n] = bit(n);
  return Poset::from_leq(std::move(names), std::move(up), p.root());
}

}  // namespace

Poset p_prime(int i) { return add_top(rn_prefix(i), "T"); }

Poset comb(int n) {
  std::vector<int> teeth(n);
  for (int i = 0; i < n; ++i) teeth[i] = i + 1;
  return broken_comb(n, teeth);
}

Poset broken_comb(int n, const std::vector<int>& teeth) {
  if (n < 1) throw std::invalid_argument("comb needs a spine");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  int next = n;
  for (int t : teeth) {
    if (t < 1 || t > n) throw std::invalid_argument("tooth out of range");
    names.push_back("y" + std::to_string(t));
    covers.emplace_back(t - 1, next++);
  }
  return Poset::from_covers(std::move(names), covers, 0);
}

std::vector<Poset> broken_combs(int n) {
  std::vector<Poset> out;
  for (Mask sub = 0; sub < (Mask{1} << n); ++sub) {
    std::vector<int> teeth;
    for (int t = 1; t <= n; ++t)
      if (sub & bit(t - 1)) teeth.push_back(t);
    out.push_back(broken_comb(n, teeth));
  }
  return out;
}

std::vector<Poset> broken_combs_upto(int max_points) {
  std::map<CanonicalForm, Poset> dedup;
  for (int n = 1; n <= max_points; ++n)
    for (Poset& p : broken_combs(n)) {
      if (p.size() > max_points) continue;
      dedup.emplace(canonical_form(p), std::move(p));
    }
  std::vector<Poset> out;
  for (auto& [cf, p] : dedup) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), [](const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_form(a).code < canonical_form(b).code;
  });
  return out;
}

bool is_broken_comb(const Poset& p) {
  static std::map<int, std::set<std::vector<std::uint64_t>>> cache;
  auto& forms = cache[p.size()];
  if (forms.empty()) {
    for (int n = 1; n <= p.size(); ++n)
      for (const Poset& c : broken_combs(n))
        if (c.size() == p.size()) forms.insert(canonical_form(c).code);
  }
  return forms.count(canonical_form(p).code) > 0;
}

bool is_boolean_sum(const Poset& p) {
  if (!p.rooted()) return false;
  const int n = p.size();
  std::vector<int> depth(n);
  for (int i = 0; i < n; ++i) depth[i] = p.depth_of(i);
  for (int i = 0; i < n; ++i)
    for (Mask t = p.covers_above(i); t; t &= t - 1)
      if (depth[i] != depth[lowest_bit(t)] + 1) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (depth[x] == depth[y] + 1 && !p.leq(x, y)) return false;
  return true;
}

StackProfile stack_profile(const Poset& p) {
  StackProfile out;
  out.level_sizes.assign(p.depth(), 0);
  for (int i = 0; i < p.size(); ++i) out.level_sizes[p.depth_of(i) - 1] += 1;
  out.stack_depth = 0;
  int run = 0;
  for (int c : out.level_sizes) {
    run = c >= 2 ? run + 1 : 0;
    out.stack_depth = std::max(out.stack_depth, run);
  }
  return out;
}

Poset boolean_sum(const std::vector<int>& level_sizes) {
  if (level_sizes.empty()) throw std::invalid_argument("empty profile");
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> covers;
  std::vector<std::vector<int>> levels;
  int next = 0;
  for (std::size_t j = 0; j < level_sizes.size(); ++j) {
    if (level_sizes[j] < 1) throw std::invalid_argument("bad level size");
    levels.emplace_back();
    for (int i = 0; i < level_sizes[j]; ++i) {
      names.push_back("L" + std::to_string(j) + "." + std::to_string(i));
      levels[j].push_back(next++);
    }
    if (j > 0)
      for (int lo : levels[j])
        for (int hi : levels[j - 1]) covers.emplace_back(lo, hi);
  }
  std::optional<int> root;
  if (level_sizes.back() == 1) root = levels.back()[0];
  return Poset::from_covers(std::move(names), covers, root);
}

std::vector<Poset> boolean_sums_upto(int max_points, int max_width) {
  std::vector<Poset> out;
  std::vector<int> profile;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (!profile.empty()) {
      profile.push_back(1);
      out.push_back(boolean_sum(profile));
      profile.pop_back();
    }
    const int cap = max_width < 0 ? remaining - 1 : std::min(remaining - 1, max_width);
    for (int c = 1; c <= cap; ++c) {
      profile.push_back(c);
      self(self, remaining - c);
      profile.pop_back();
    }
  };
  out.push_back(Poset::point());
  rec(rec, max_points);
  std::sort(out.begin(), out.end(), [](const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_form(a).code < canonical_form(b).code;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Poset& a, const Poset& b) {
                          return canonical_form(a) == canonical_form(b);
                        }),
            out.end());
  return out;
}

namespace {

Color ones(int k) { return k <= 0 ? 0 : (Color{1} << k) - 1; }

std::vector<std::string> pvars(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("p" + std::to_string(i));
  return v;
}

// layers 0..k of two elements, bipartite between consecutive layers, plus a
// root below layer k
Poset ladder_frame(int k) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> covers;
  for (int j = 0; j <= k; ++j) {
    names.push_back("l" + std::to_string(j));
    names.push_back("r" + std::to_string(j));
    if (j > 0)
      for (int lo : {2 * j, 2 * j + 1})
        for (int hi : {2 * j - 2, 2 * j - 1}) covers.emplace_back(lo, hi);
  }
  names.push_back("root");
  covers.emplace_back(2 * k + 2, 2 * k);
  covers.emplace_back(2 * k + 2, 2 * k + 1);
  return Poset::from_covers(std::move(names), covers, 2 * k + 2);
}

Model ladder_model(int n, int k, int root_drop) {
  Poset f = ladder_frame(k);
  std::vector<Color> color(f.size(), 0);
  for (int j = 0; j <= k; ++j) {
    color[2 * j] = ones(n - j);
    color[2 * j + 1] = ones(n - j - 1);
  }
  color[2 * k + 2] = ones(n - k - root_drop);
  return Model(std::move(f), pvars(n), std::move(color));
}

}  // namespace

Model m_model(int n, int k) {
  if (n <= 2 || k < 0 || k + 1 >= n) throw std::invalid_argument("m_model parameters");
  return ladder_model(n, k, 1);
}

Model n_model(int n, int k) {
  if (n <= 2 || k < 0 || k + 2 > n) throw std::invalid_argument("n_model parameters");
  return ladder_model(n, k, 2);
}

Poset s_frame(int n) {
  if (n < 3) throw std::invalid_argument("s_frame needs n >= 3");
  return add_top(n_model(n, n - 2).frame, "T");
}

Poset q_poset(int i) {
  using P = std::vector<std::pair<int, int>>;
  switch (i) {
    case 1:  // tadpole: a chain of three plus a stray maximal point
      return Poset::from_covers({"r", "a", "b", "c"}, P{{0, 1}, {1, 2}, {0, 3}}, 0);
    case 2:  // 1-2-2 with one bipartite edge missing
      return Poset::from_covers({"r", "a1", "a2", "b1", "b2"},
                                P{{0, 1}, {0, 3}, {1, 2}, {1, 4}, {3, 4}}, 0);
    case 3:  // uneven diamond: 2-chain and 3-chain sharing bottom and top
      return Poset::from_covers({"r", "m", "t", "b1", "b2"},
                                P{{0, 1}, {1, 2}, {0, 3}, {3, 4}, {4, 2}}, 0);
    case 4:  // complete 1-2-2
      return Poset::from_covers({"r", "a1", "a2", "b1", "b2"},
                                P{{0, 1}, {0, 3}, {1, 2}, {1, 4}, {3, 2}, {3, 4}}, 0);
    case 5:  // complete 1-2-2 with a top
      return Poset::from_covers({"r", "a1", "a2", "b1", "b2", "t"},
                                P{{0, 1}, {0, 3}, {1, 2}, {1, 4}, {3, 2}, {3, 4}, {2, 5}, {4, 5}},
                                0);
    case 6:  // diamond
      return Poset::from_covers({"r", "l", "m", "t"}, P{{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0);
    case 7:  // two 2-chains over a root
      return Poset::from_covers({"r", "a1", "a2", "b1", "b2"},
                                P{{0, 1}, {1, 2}, {0, 3}, {3, 4}}, 0);
    case 8:  // 3-fork
      return Poset::from_covers({"r", "t0", "t1", "t2"}, P{{0, 1}, {0, 2}, {0, 3}}, 0);
    default:
      throw std::invalid_argument("q_poset index must be 1..8");
  }
}

std::pair<Model, Model> figure2_pair() {
  Model chain(Poset::chain(2), {"p"}, {0, 1});
  Model fork(Poset::fork(2), {"p"}, {0, 1, 0});
  return {std::move(chain), std::move(fork)};
}

std::vector<std::pair<Model, Model>> figure4_pairs() {
  std::vector<std::pair<Model, Model>> out;
  const std::vector<std::string> p1 = {"p"};
  const std::vector<std::string> p2 = {"p", "q"};
  const std::vector<std::string> p3 = {"p", "q", "s"};
  // colors 1^a0^b are the masks with the low a bits set
  out.emplace_back(Model(q_poset(1), p1, {0, 0, 1, 0}),
                   Model(Poset::fork(2), p1, {0, 1, 0}));
  out.emplace_back(Model(q_poset(2), p1, {0, 0, 0, 0, 1}),
                   Model(Poset::fork(2), p1, {0, 1, 0}));
  out.emplace_back(Model(q_poset(3), p2, {0, 0, 3, 0, 1}),
                   Model(q_poset(6), p2, {0, 0, 1, 3}));
  out.emplace_back(
      Model(q_poset(4), p2, {0, 1, 3, 0, 1}),
      Model(Poset::from_covers({"r", "m", "tl", "tr"},
                               std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}}, 0),
            p2, {0, 1, 3, 1}));
  out.emplace_back(
      Model(q_poset(5), p3, {0, 1, 3, 0, 1, 7}),
      Model(Poset::from_covers(
                {"r", "m", "ml", "mr", "t"},
                std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}, 0),
            p3, {0, 1, 3, 1, 7}));
  return out;
}

}  // namespace ultab
