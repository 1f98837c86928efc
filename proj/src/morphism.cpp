#include "ultab/morphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ultab/model.hpp"

namespace ultab {

PMorphismCheck check_pmorphism(const std::vector<int>& f, const Poset& p,
                               const Poset& q) {
  if (static_cast<int>(f.size()) != p.size())
    throw std::invalid_argument("map is not total on the source");
  for (int x : f)
    if (x < 0 || x >= q.size()) throw std::invalid_argument("map image out of range");
  for (int x = 0; x < p.size(); ++x)
    for (Mask t = p.strict_up(x); t; t &= t - 1) {
      const int y = lowest_bit(t);
      if (!q.leq(f[x], f[y]))
        return {false, "not order-preserving at " + p.name(x) + " <= " + p.name(y)};
    }
  for (int x = 0; x < p.size(); ++x)
    for (Mask t = q.strict_up(f[x]); t; t &= t - 1) {
      const int y = lowest_bit(t);
      bool lifted = false;
      for (Mask s = p.up(x); s && !lifted; s &= s - 1)
        if (f[lowest_bit(s)] == y) lifted = true;
      if (!lifted)
        return {false, "back condition fails at " + p.name(x) + " for target " + q.name(y)};
    }
  return {true, ""};
}

namespace {

// Backtracking over source worlds in order of decreasing depth, so every
// strict successor is already mapped and order-preservation prunes early.
template <typename Yield>
void search_pmorphisms(const Poset& p, const Poset& q, Yield&& yield) {
  const int n = p.size(), m = q.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return popcount(p.up(a)) < popcount(p.up(b)); });
  std::vector<int> f(n, -1);
  std::vector<int> hits(m, 0);
  int covered = 0;
  auto rec = [&](auto&& self, int idx) -> bool {
    if (idx == n) {
      if (covered < m) return false;
      // order-preservation held throughout; back condition checked whole
      if (!check_pmorphism(f, p, q).ok) return false;
      return yield(f);
    }
    const int x = order[idx];
    // f(x) must lie below the images of all covers of x
    Mask allowed = q.all();
    for (Mask t = p.covers_above(x); t; t &= t - 1) allowed &= q.down(f[lowest_bit(t)]);
    // surjectivity still achievable?
    if (covered + (n - idx) < m) return false;
    for (Mask t = allowed; t; t &= t - 1) {
      const int y = lowest_bit(t);
      f[x] = y;
      if (hits[y]++ == 0) ++covered;
      if (self(self, idx + 1)) return true;
      if (--hits[y] == 0) --covered;
      f[x] = -1;
    }
    return false;
  };
  rec(rec, 0);
}

}  // namespace

std::vector<PMorphism> surjective_pmorphisms(const Poset& p, const Poset& q,
                                             std::size_t cap) {
  std::vector<PMorphism> out;
  search_pmorphisms(p, q, [&](const std::vector<int>& f) {
    if (out.size() >= cap) throw CapExceeded("p-morphism cap exceeded");
    out.push_back({p, q, f});
    return false;  // keep searching
  });
  std::sort(out.begin(), out.end(),
            [](const PMorphism& a, const PMorphism& b) { return a.map < b.map; });
  return out;
}

std::optional<std::vector<int>> find_surjective_pmorphism(const Poset& p,
                                                          const Poset& q) {
  std::optional<std::vector<int>> found;
  search_pmorphisms(p, q, [&](const std::vector<int>& f) {
    found = f;
    return true;  // stop at the first
  });
  return found;
}

namespace {

// A partition is the fibre partition of a surjective p-morphism iff the
// block relation induced by "some member below some member" is antisymmetric
// and every member of a related block has a successor in the other block.
std::optional<Poset> quotient_by(const Poset& p, const std::vector<int>& block,
                                 int nblocks) {
  std::vector<Mask> members(nblocks, 0);
  for (int x = 0; x < p.size(); ++x) members[block[x]] |= bit(x);
  std::vector<Mask> rel(nblocks, 0);  // rel[a] bit b: a <= b
  for (int a = 0; a < nblocks; ++a) {
    for (int b = 0; b < nblocks; ++b) {
      if (a == b) {
        rel[a] |= bit(a);
        continue;
      }
      bool some = false, all = true;
      for (Mask t = members[a]; t; t &= t - 1) {
        if (p.up(lowest_bit(t)) & members[b])
          some = true;
        else
          all = false;
      }
      if (some && !all) return std::nullopt;
      if (some) rel[a] |= bit(b);
    }
  }
  for (int a = 0; a < nblocks; ++a)
    for (int b = a + 1; b < nblocks; ++b)
      if ((rel[a] & bit(b)) && (rel[b] & bit(a))) return std::nullopt;
  std::vector<std::string> names;
  for (int b = 0; b < nblocks; ++b) {
    std::string least;
    for (Mask t = members[b]; t; t &= t - 1) {
      const std::string& nm = p.name(lowest_bit(t));
      if (least.empty() || nm < least) least = nm;
    }
    names.push_back(least);
  }
  std::optional<int> root;
  if (p.root()) root = block[*p.root()];
  // rel is transitive here: a<=b<=c gives every member of a a successor in
  // b, then one in c
  return Poset::from_leq(std::move(names), std::move(rel), root);
}

}  // namespace

std::vector<Poset> pmorphic_images(const Poset& p, std::size_t cap) {
  if (static_cast<std::size_t>(p.size()) > cap)
    throw CapExceeded("image enumeration cap exceeded");
  const int n = p.size();
  std::map<CanonicalForm, Poset> images;
  std::vector<int> block(n, 0);
  auto rec = [&](auto&& self, int idx, int used) -> void {
    if (idx == n) {
      if (auto q = quotient_by(p, block, used)) images.emplace(canonical_form(*q), *q);
      return;
    }
    for (int b = 0; b <= used && b < n; ++b) {
      block[idx] = b;
      self(self, idx + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  std::vector<Poset> out;
  for (auto& [cf, q] : images) out.push_back(std::move(q));
  std::sort(out.begin(), out.end(), [](const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_form(a).code < canonical_form(b).code;
  });
  return out;
}

std::optional<JankovWitness> jankov_refutes(const Poset& p, const Poset& q) {
  q.root_or_throw();
  for (int x = 0; x < p.size(); ++x) {
    if (popcount(p.up(x)) < q.size()) continue;
    Poset ux = principal_upset(p, x);
    if (auto f = find_surjective_pmorphism(ux, q)) return JankovWitness{x, *f};
  }
  return std::nullopt;
}

bool jankov_refutes_via_images(const Poset& p, const Poset& q, std::size_t cap) {
  for (const Poset& img : pmorphic_images(p, cap))
    for (int x = 0; x < img.size(); ++x)
      if (is_isomorphic(principal_upset(img, x), q)) return true;
  return false;
}

bool frame_has_kc(const Poset& p) {
  for (int x = 0; x < p.size(); ++x)
    if (popcount(p.maximal_worlds() & p.up(x)) != 1) return false;
  return true;
}

bool frame_has_bw2(const Poset& p) { return width(p) <= 2; }

bool frame_has_bd(const Poset& p, int n) { return p.depth() <= n; }

bool jankov_syntactic_validates(const Poset& p, const Poset& q) {
  const JankovFormula jf = jankov_syntactic(q);
  const int m = static_cast<int>(jf.upsets.size());
  const auto pup = all_upsets(p);
  auto qidx = [&](Mask u) {
    for (int i = 0; i < m; ++i)
      if (jf.upsets[i] == u) return i;
    throw std::logic_error("diagram upset missing");
  };

  struct Conjunct {
    char op;  // 'B' bot, 'T' top, '&', '|', '>'
    int target, a, b;
  };
  std::vector<Conjunct> cj;
  cj.push_back({'B', qidx(0), -1, -1});
  cj.push_back({'T', qidx(q.all()), -1, -1});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Mask a = jf.upsets[i], b = jf.upsets[j];
      if (j >= i) {
        cj.push_back({'&', qidx(a & b), i, j});
        cj.push_back({'|', qidx(a | b), i, j});
      }
      Mask imp = 0;
      for (int x = 0; x < q.size(); ++x)
        if ((q.up(x) & a & ~b) == 0) imp |= bit(x);
      cj.push_back({'>', qidx(imp), i, j});
    }

  // assignment order: bot, top, conclusion, then the remaining variables;
  // a conjunct applies once all its variables are bound
  std::vector<int> order{qidx(0), qidx(q.all())};
  if (jf.conclusion_var != order[0] && jf.conclusion_var != order[1])
    order.push_back(jf.conclusion_var);
  for (int i = 0; i < m; ++i)
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;
  std::vector<std::vector<Conjunct>> at(m);
  for (const Conjunct& c : cj) {
    int last = pos[c.target];
    if (c.a >= 0) last = std::max({last, pos[c.a], pos[c.b]});
    at[last].push_back(c);
  }
  const int s_pos = pos[jf.conclusion_var];

  std::vector<Mask> val(m, 0);
  // true when every completion of the current prefix validates
  auto rec = [&](auto&& self, int depth, Mask premise) -> bool {
    if (depth == m) return (premise & ~val[jf.conclusion_var]) == 0;
    for (Mask u : pup) {
      val[order[depth]] = u;
      Mask acc = premise;
      for (const Conjunct& c : at[depth]) {
        Mask rhs = 0;
        switch (c.op) {
          case 'B': rhs = 0; break;
          case 'T': rhs = p.all(); break;
          case '&': rhs = val[c.a] & val[c.b]; break;
          case '|': rhs = val[c.a] | val[c.b]; break;
          case '>': rhs = heyting_implies(p, val[c.a], val[c.b]); break;
        }
        const Mask lhs = val[c.target];
        acc &= heyting_implies(p, lhs, rhs) & heyting_implies(p, rhs, lhs);
        if (acc == 0) break;
      }
      if (acc == 0) continue;  // premise dies; the implication holds below here
      if (depth >= s_pos && (acc & ~val[jf.conclusion_var]) == 0) continue;
      if (depth + 1 == m) return false;  // premise outruns the conclusion
      if (!self(self, depth + 1, acc)) return false;
    }
    return true;
  };
  return rec(rec, 0, p.all());
}

bool validates_axiomset(const Poset& p, const AxiomSet& a, std::size_t cap) {
  for (const Axiom& ax : a.axioms) {
    if (ax.semantic) {
      const bool ok = std::visit(
          [&](const auto& chk) -> bool {
            using T = std::decay_t<decltype(chk)>;
            if constexpr (std::is_same_v<T, SemanticJankov>)
              return !jankov_refutes(p, chk.q).has_value();
            else if constexpr (std::is_same_v<T, SemanticKC>)
              return frame_has_kc(p);
            else if constexpr (std::is_same_v<T, SemanticBW2>)
              return frame_has_bw2(p);
            else
              return frame_has_bd(p, chk.n);
          },
          *ax.semantic);
      if (!ok) return false;
    } else {
      if (!frame_validates(p, ax.formula, cap).valid) return false;
    }
  }
  return true;
}

}  // namespace ultab
