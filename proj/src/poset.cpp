#include "ultab/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ultab {

int Poset::root_or_throw() const {
  if (!root_) throw std::invalid_argument("poset is not rooted");
  return *root_;
}

int Poset::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

void Poset::validate() const {
  const int n = size();
  if (n == 0) throw std::invalid_argument("empty poset");
  if (n > kMaxWorlds) throw std::invalid_argument("too many worlds");
  if (static_cast<int>(names_.size()) != n)
    throw std::invalid_argument("name/world count mismatch");
  {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (static_cast<int>(seen.size()) != n)
      throw std::invalid_argument("duplicate world names");
  }
  const Mask universe = all();
  for (int i = 0; i < n; ++i) {
    if (up_[i] & ~universe) throw std::invalid_argument("world mask out of range");
    if (!leq(i, i)) throw std::invalid_argument("order not reflexive");
    for (Mask m = up_[i]; m; m &= m - 1) {
      const int j = lowest_bit(m);
      if ((up_[j] & ~up_[i]) != 0)
        throw std::invalid_argument("order not transitive");
      if (i != j && leq(j, i)) throw std::invalid_argument("order not antisymmetric");
    }
  }
  if (root_) {
    if (*root_ < 0 || *root_ >= n) throw std::invalid_argument("root out of range");
    if (up_[*root_] != universe)
      throw std::invalid_argument("root is not below every world");
  }
}

void Poset::fill_down() {
  down_.assign(up_.size(), 0);
  for (int i = 0; i < size(); ++i)
    for (Mask m = up_[i]; m; m &= m - 1) down_[lowest_bit(m)] |= bit(i);
}

Poset Poset::from_leq(std::vector<std::string> names, std::vector<Mask> up,
                      std::optional<int> root) {
  Poset p;
  p.names_ = std::move(names);
  p.up_ = std::move(up);
  p.root_ = root;
  p.validate();
  p.fill_down();
  return p;
}

Poset Poset::from_covers(std::vector<std::string> names,
                         const std::vector<std::pair<int, int>>& covers,
                         std::optional<int> root) {
  const int n = static_cast<int>(names.size());
  if (n <= 0 || n > kMaxWorlds) throw std::invalid_argument("bad world count");
  std::vector<Mask> up(n);
  for (int i = 0; i < n; ++i) up[i] = bit(i);
  for (auto [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
      throw std::invalid_argument("bad cover pair");
    up[a] |= bit(b);
  }
  // transitive closure; a cycle shows up as a violated antisymmetry below
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Mask acc = up[i];
      for (Mask m = up[i]; m; m &= m - 1) acc |= up[lowest_bit(m)];
      if (acc != up[i]) { up[i] = acc; changed = true; }
    }
  }
  return from_leq(std::move(names), std::move(up), root);
}

Poset Poset::point() { return chain(1); }

Poset Poset::chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return from_covers(std::move(names), covers, 0);
}

Poset Poset::antichain(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  std::optional<int> root;
  if (n == 1) root = 0;
  return from_covers(std::move(names), {}, root);
}

Poset Poset::fork(int branches) {
  std::vector<std::string> names{"r"};
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < branches; ++i) {
    names.push_back("t" + std::to_string(i));
    covers.emplace_back(0, i + 1);
  }
  return from_covers(std::move(names), covers, 0);
}

Mask Poset::covers_above(int i) const {
  Mask c = 0;
  for (Mask m = strict_up(i); m; m &= m - 1) {
    const int j = lowest_bit(m);
    if ((strict_up(i) & down_[j] & ~bit(j)) == 0) c |= bit(j);
  }
  return c;
}

Mask Poset::covers_below(int i) const {
  Mask c = 0;
  for (Mask m = down_[i] & ~bit(i); m; m &= m - 1) {
    const int j = lowest_bit(m);
    if (covers_above(j) & bit(i)) c |= bit(j);
  }
  return c;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (Mask m = covers_above(i); m; m &= m - 1) out.emplace_back(i, lowest_bit(m));
  return out;
}

int Poset::depth_of(int x) const {
  // longest chain upward, counted in points
  std::vector<int> memo(size(), 0);
  // worlds sorted by |up| ascending: successors are computed first
  std::vector<int> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return popcount(up_[a]) < popcount(up_[b]); });
  for (int w : order) {
    int best = 0;
    for (Mask m = strict_up(w); m; m &= m - 1) best = std::max(best, memo[lowest_bit(m)]);
    memo[w] = best + 1;
  }
  return memo[x];
}

int Poset::depth() const {
  int d = 0;
  for (int i = 0; i < size(); ++i) d = std::max(d, depth_of(i));
  return d;
}

Mask Poset::maximal_worlds() const {
  Mask m = 0;
  for (int i = 0; i < size(); ++i)
    if (strict_up(i) == 0) m |= bit(i);
  return m;
}

Mask Poset::minimal_worlds() const {
  Mask m = 0;
  for (int i = 0; i < size(); ++i)
    if ((down_[i] & ~bit(i)) == 0) m |= bit(i);
  return m;
}

bool Poset::is_upset(Mask m) const {
  for (Mask t = m; t; t &= t - 1)
    if (up_[lowest_bit(t)] & ~m) return false;
  return true;
}

Mask up_closure(const Poset& p, Mask s) {
  if (s & ~p.all()) throw std::invalid_argument("unknown world in set");
  Mask out = 0;
  for (Mask t = s; t; t &= t - 1) out |= p.up(lowest_bit(t));
  return out;
}

namespace {

// worlds ordered so that all strict successors of a world precede it
std::vector<int> topo_desc(const Poset& p) {
  std::vector<int> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(p.up(a)) < popcount(p.up(b));
  });
  return order;
}

void gen_upsets(const Poset& p, const std::vector<int>& order, std::size_t idx,
                Mask cur, std::vector<Mask>& out, std::size_t cap) {
  if (idx == order.size()) {
    if (out.size() >= cap) throw CapExceeded("upset cap exceeded");
    out.push_back(cur);
    return;
  }
  const int w = order[idx];
  gen_upsets(p, order, idx + 1, cur, out, cap);
  if ((p.strict_up(w) & ~cur) == 0)
    gen_upsets(p, order, idx + 1, cur | bit(w), out, cap);
}

}  // namespace

std::vector<Mask> all_upsets(const Poset& p, std::size_t cap) {
  std::vector<Mask> out;
  gen_upsets(p, topo_desc(p), 0, 0, out, cap);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    return std::make_pair(popcount(a), a) < std::make_pair(popcount(b), b);
  });
  return out;
}

std::size_t count_upsets(const Poset& p, std::size_t cap) {
  return all_upsets(p, cap).size();
}

Poset subposet(const Poset& p, Mask mask, std::optional<int> root) {
  if (!mask || (mask & ~p.all())) throw std::invalid_argument("bad subposet mask");
  std::vector<int> idx(p.size(), -1);
  std::vector<std::string> names;
  int k = 0;
  for (int i = 0; i < p.size(); ++i)
    if (mask & bit(i)) {
      idx[i] = k++;
      names.push_back(p.name(i));
    }
  std::vector<Mask> up(k, 0);
  for (int i = 0; i < p.size(); ++i) {
    if (idx[i] < 0) continue;
    for (Mask m = p.up(i) & mask; m; m &= m - 1) up[idx[i]] |= bit(idx[lowest_bit(m)]);
  }
  std::optional<int> r;
  if (root) {
    if (!(mask & bit(*root))) throw std::invalid_argument("root outside mask");
    r = idx[*root];
  }
  return Poset::from_leq(std::move(names), std::move(up), r);
}

Poset principal_upset(const Poset& p, int x) {
  return subposet(p, p.up(x), x);
}

std::vector<Poset> rooted_upsets(const Poset& p, bool dedup_iso) {
  std::vector<Poset> out;
  std::set<CanonicalForm> seen;
  for (int x = 0; x < p.size(); ++x) {
    Poset q = principal_upset(p, x);
    if (dedup_iso && !seen.insert(canonical_form(q)).second) continue;
    out.push_back(std::move(q));
  }
  return out;
}

Poset linear_sum(const Poset& top, const Poset& bottom) {
  const int nt = top.size(), nb = bottom.size();
  if (nt + nb > kMaxWorlds) throw std::invalid_argument("linear sum too large");
  std::vector<std::string> names;
  for (int i = 0; i < nb; ++i) names.push_back("b." + bottom.name(i));
  for (int i = 0; i < nt; ++i) names.push_back("t." + top.name(i));
  const Mask top_all = ((Mask{1} << nt) - 1) << nb;
  std::vector<Mask> up(nb + nt);
  for (int i = 0; i < nb; ++i) up[i] = bottom.up(i) | top_all;
  for (int i = 0; i < nt; ++i) up[nb + i] = top.up(i) << nb;
  std::optional<int> root = bottom.root();
  return Poset::from_leq(std::move(names), std::move(up), root);
}

Poset disjoint_union(const Poset& a, const Poset& b) {
  const int na = a.size(), nb = b.size();
  if (na + nb > kMaxWorlds) throw std::invalid_argument("union too large");
  std::vector<std::string> names;
  for (int i = 0; i < na; ++i) names.push_back("a." + a.name(i));
  for (int i = 0; i < nb; ++i) names.push_back("b." + b.name(i));
  std::vector<Mask> up(na + nb);
  for (int i = 0; i < na; ++i) up[i] = a.up(i);
  for (int i = 0; i < nb; ++i) up[na + i] = b.up(i) << na;
  return Poset::from_leq(std::move(names), std::move(up), std::nullopt);
}

int max_antichain(const Poset& p, Mask within) {
  // branch and bound over the candidate set
  std::vector<int> worlds;
  for (Mask m = within; m; m &= m - 1) worlds.push_back(lowest_bit(m));
  int best = 0;
  auto rec = [&](auto&& self, std::size_t idx, Mask chosen, int count) -> void {
    best = std::max(best, count);
    if (idx >= worlds.size()) return;
    if (count + static_cast<int>(worlds.size() - idx) <= best) return;
    const int w = worlds[idx];
    bool comparable = (p.up(w) & chosen) || (p.down(w) & chosen);
    if (!comparable) self(self, idx + 1, chosen | bit(w), count + 1);
    self(self, idx + 1, chosen, count);
  };
  rec(rec, 0, 0, 0);
  return best;
}

int width(const Poset& p) {
  int w = 0;
  for (int x = 0; x < p.size(); ++x) w = std::max(w, max_antichain(p, p.up(x)));
  return w;
}

namespace {

// Invariant key per world; isomorphisms preserve it, so canonical labellings
// only permute worlds within equal-key groups.
std::vector<std::uint64_t> world_keys(const Poset& p,
                                      const std::vector<std::uint32_t>* color) {
  const int n = p.size();
  std::vector<std::uint64_t> keys(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t covs = 0;
    for (Mask m = p.covers_above(i); m; m &= m - 1)
      covs = covs * 31 + static_cast<std::uint64_t>(p.depth_of(lowest_bit(m)));
    std::uint64_t k = 0;
    k = (k << 6) | static_cast<std::uint64_t>(p.depth_of(i));
    k = (k << 6) | static_cast<std::uint64_t>(popcount(p.up(i)));
    k = (k << 6) | static_cast<std::uint64_t>(popcount(p.down(i)));
    k = (k << 6) | static_cast<std::uint64_t>(popcount(p.covers_above(i)));
    k = (k << 6) | static_cast<std::uint64_t>(popcount(p.covers_below(i)));
    k = (k << 16) | (covs & 0xffff);
    k = (k << 18) | (color ? ((*color)[i] & 0x3ffff) : 0u);
    keys[i] = k;
  }
  return keys;
}

std::vector<std::vector<int>> key_groups(const std::vector<std::uint64_t>& keys) {
  std::map<std::uint64_t, std::vector<int>> by_key;
  for (int i = 0; i < static_cast<int>(keys.size()); ++i) by_key[keys[i]].push_back(i);
  std::vector<std::vector<int>> groups;
  for (auto& [k, g] : by_key) groups.push_back(g);
  return groups;
}

std::vector<std::uint64_t> encode(const Poset& p,
                                  const std::vector<std::uint32_t>* color,
                                  const std::vector<int>& order) {
  const int n = p.size();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::uint64_t> code;
  code.push_back(static_cast<std::uint64_t>(n));
  code.push_back(p.root() ? static_cast<std::uint64_t>(pos[*p.root()]) + 1 : 0);
  for (int i = 0; i < n; ++i) {
    Mask row = 0;
    for (Mask m = p.up(order[i]); m; m &= m - 1) row |= bit(pos[lowest_bit(m)]);
    code.push_back(row);
  }
  if (color)
    for (int i = 0; i < n; ++i) code.push_back((*color)[order[i]]);
  return code;
}

CanonicalForm canonical_impl(const Poset& p,
                             const std::vector<std::uint32_t>* color) {
  auto groups = key_groups(world_keys(p, color));
  // guard against pathological symmetry; instances here stay tiny
  double combos = 1;
  for (auto& g : groups)
    for (std::size_t i = 2; i <= g.size(); ++i) combos *= static_cast<double>(i);
  if (combos > 5e6) throw std::runtime_error("canonical form: too symmetric");

  std::vector<std::uint64_t> best;
  std::vector<int> order;
  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      auto code = encode(p, color, order);
      if (best.empty() || code < best) best = std::move(code);
      return;
    }
    auto g = groups[gi];
    std::sort(g.begin(), g.end());
    do {
      const std::size_t base = order.size();
      order.insert(order.end(), g.begin(), g.end());
      self(self, gi + 1);
      order.resize(base);
    } while (std::next_permutation(g.begin(), g.end()));
  };
  rec(rec, 0);
  return CanonicalForm{std::move(best)};
}

std::optional<std::vector<int>> iso_impl(const Poset& p,
                                         const std::vector<std::uint32_t>* pc,
                                         const Poset& q,
                                         const std::vector<std::uint32_t>* qc) {
  const int n = p.size();
  if (n != q.size()) return std::nullopt;
  if (p.rooted() != q.rooted()) return std::nullopt;
  auto pk = world_keys(p, pc);
  auto qk = world_keys(q, qc);
  {
    auto ps = pk, qs = qk;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    if (ps != qs) return std::nullopt;
  }
  std::vector<int> map(n, -1);
  Mask used = 0;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used & bit(j)) continue;
      if (pk[i] != qk[j]) continue;
      if (pc && (*pc)[i] != (*qc)[j]) continue;
      bool ok = true;
      for (int a = 0; a < i && ok; ++a) {
        if (p.leq(a, i) != q.leq(map[a], j)) ok = false;
        if (p.leq(i, a) != q.leq(j, map[a])) ok = false;
      }
      if (!ok) continue;
      map[i] = j;
      used |= bit(j);
      if (self(self, i + 1)) return true;
      used &= ~bit(j);
      map[i] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return map;
}

}  // namespace

CanonicalForm canonical_form(const Poset& p) { return canonical_impl(p, nullptr); }

CanonicalForm canonical_form_colored(const Poset& p,
                                     const std::vector<std::uint32_t>& color) {
  return canonical_impl(p, &color);
}

std::optional<std::vector<int>> find_isomorphism(const Poset& p, const Poset& q) {
  return iso_impl(p, nullptr, q, nullptr);
}

std::optional<std::vector<int>> find_isomorphism_colored(
    const Poset& p, const std::vector<std::uint32_t>& pc, const Poset& q,
    const std::vector<std::uint32_t>& qc) {
  return iso_impl(p, &pc, q, &qc);
}

bool is_isomorphic(const Poset& p, const Poset& q) {
  return find_isomorphism(p, q).has_value();
}

namespace {

// Every poset on n+1 points is some poset on n points plus one
// fresh minimal point whose strict upset is an upset of the rest.
std::vector<Poset> extend_all(const std::vector<Poset>& base) {
  std::map<CanonicalForm, Poset> out;
  for (const auto& q : base) {
    for (Mask u : all_upsets(q)) {
      const int n = q.size();
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back(q.name(i));
      names.push_back("n" + std::to_string(n));
      std::vector<Mask> up(n + 1);
      for (int i = 0; i < n; ++i) up[i] = q.up(i);
      up[n] = (u | 0) | bit(n);
      Poset ext = Poset::from_leq(std::move(names), std::move(up), std::nullopt);
      out.emplace(canonical_form(ext), std::move(ext));
    }
  }
  std::vector<Poset> res;
  for (auto& [cf, p] : out) res.push_back(std::move(p));
  return res;
}

}  // namespace

std::vector<Poset> all_posets(int n) {
  if (n <= 0) return {};
  std::vector<Poset> cur{Poset::antichain(1)};
  for (int k = 1; k < n; ++k) cur = extend_all(cur);
  return cur;
}

std::vector<Poset> all_rooted_posets(int n) {
  if (n <= 0) return {};
  if (n == 1) return {Poset::point()};
  std::vector<Poset> out;
  for (const auto& q : all_posets(n - 1)) {
    const int m = q.size();
    std::vector<std::string> names{"r"};
    for (int i = 0; i < m; ++i) names.push_back(q.name(i));
    std::vector<Mask> up(m + 1);
    up[0] = (Mask{1} << (m + 1)) - 1;
    for (int i = 0; i < m; ++i) up[i + 1] = q.up(i) << 1;
    out.push_back(Poset::from_leq(std::move(names), std::move(up), 0));
  }
  return out;
}

}  // namespace ultab
