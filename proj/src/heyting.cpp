#include "ultab/heyting.hpp"

#include <algorithm>
#include <set>

#include "ultab/model.hpp"

namespace ultab {

namespace {

std::vector<Mask> sorted_upsets(std::set<Mask> s) {
  std::vector<Mask> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    return std::make_pair(popcount(a), a) < std::make_pair(popcount(b), b);
  });
  return out;
}

// close under pairwise meet and join by worklist saturation
void lattice_close(std::set<Mask>& s, std::size_t cap) {
  std::vector<Mask> work(s.begin(), s.end());
  while (!work.empty()) {
    const Mask u = work.back();
    work.pop_back();
    std::vector<Mask> fresh;
    for (Mask v : s) {
      for (Mask w : {u & v, u | v})
        if (!s.count(w)) fresh.push_back(w);
    }
    for (Mask w : fresh)
      if (s.insert(w).second) {
        if (s.size() > cap) throw CapExceeded("subalgebra cap exceeded");
        work.push_back(w);
      }
  }
}

}  // namespace

GenerationTrace generated_subalgebra(const Poset& p, const std::vector<Mask>& gens,
                                     std::size_t cap) {
  for (Mask g : gens)
    if (!p.is_upset(g)) throw std::invalid_argument("generator is not an upset");
  GenerationTrace out;
  out.generators = gens;
  std::set<Mask> cur(gens.begin(), gens.end());
  cur.insert(0);
  cur.insert(p.all());
  lattice_close(cur, cap);
  out.strata.push_back(sorted_upsets(cur));
  while (true) {
    std::set<Mask> next = cur;
    for (Mask u : cur)
      for (Mask v : cur) next.insert(heyting_implies(p, u, v));
    if (next.size() > cap) throw CapExceeded("subalgebra cap exceeded");
    lattice_close(next, cap);
    if (next == cur) break;
    cur = std::move(next);
    out.strata.push_back(sorted_upsets(cur));
  }
  out.stabilization_depth = static_cast<int>(out.strata.size()) - 1;
  // record the (stable) next stratum so strata[i] == strata[i+1] holds
  out.strata.push_back(out.strata.back());
  return out;
}

int generation_depth(const Poset& p, const std::vector<Mask>& gens, std::size_t cap) {
  return generated_subalgebra(p, gens, cap).stabilization_depth;
}

ProductDepthCheck product_generation_depth_check(const Poset& p, const Poset& q,
                                                 const std::vector<Mask>& gens,
                                                 std::size_t cap) {
  const Poset u = disjoint_union(p, q);
  for (Mask g : gens)
    if (!u.is_upset(g)) throw std::invalid_argument("generator is not an upset of the union");
  const Mask pmask = p.all();
  std::vector<Mask> gp, gq;
  for (Mask g : gens) {
    gp.push_back(g & pmask);
    gq.push_back((g & ~pmask) >> p.size());
  }
  ProductDepthCheck r{};
  r.union_depth = generation_depth(u, gens, cap);
  r.depth_p = generation_depth(p, gp, cap);
  r.depth_q = generation_depth(q, gq, cap);
  r.equal = r.union_depth == std::max(r.depth_p, r.depth_q);
  return r;
}

}  // namespace ultab
