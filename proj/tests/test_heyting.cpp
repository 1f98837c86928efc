#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ultab/families.hpp"
#include "ultab/heyting.hpp"
#include "ultab/model.hpp"
#include "ultab/poset.hpp"

using namespace ultab;

namespace {

Mask named_set(const Poset& p, std::initializer_list<const char*> names) {
  Mask m = 0;
  for (const char* n : names) m |= bit(p.index_of(n));
  return m;
}

}  // namespace

TEST_CASE("heyting implication") {
  const Poset fork = Poset::fork(2);
  const Mask a = named_set(fork, {"t0"});
  const Mask b = named_set(fork, {"t1"});
  CHECK(heyting_implies(fork, a, 0) == b);
  for (const Poset& p : {Poset::chain(3), Poset::fork(3), q_poset(5)}) {
    for (Mask u : all_upsets(p)) {
      CHECK(heyting_implies(p, u, u) == p.all());
      CHECK(heyting_implies(p, p.all(), u) == u);
      CHECK(p.is_upset(heyting_implies(p, u, 0)));
    }
  }
  CHECK_THROWS_AS(heyting_implies(Poset::chain(2), bit(5), 0), std::invalid_argument);
}

TEST_CASE("generated subalgebra strata") {
  {
    const Poset chain = Poset::chain(2);
    const GenerationTrace t = generated_subalgebra(chain, {named_set(chain, {"c1"})});
    CHECK(t.stabilization_depth == 0);
    CHECK(t.subalgebra().size() == 3);
  }
  {
    const Poset fork = Poset::fork(2);
    const GenerationTrace t = generated_subalgebra(fork, {named_set(fork, {"t0"})});
    CHECK(t.stabilization_depth == 1);
    CHECK(t.subalgebra().size() == 5);
    // strata grow monotonically and stay meet/join closed
    for (std::size_t i = 0; i + 1 < t.strata.size(); ++i) {
      for (Mask u : t.strata[i])
        CHECK(std::find(t.strata[i + 1].begin(), t.strata[i + 1].end(), u) !=
              t.strata[i + 1].end());
      for (Mask u : t.strata[i])
        for (Mask v : t.strata[i]) {
          CHECK(std::find(t.strata[i].begin(), t.strata[i].end(), u & v) != t.strata[i].end());
          CHECK(std::find(t.strata[i].begin(), t.strata[i].end(), u | v) != t.strata[i].end());
        }
    }
  }
  {
    // the singleton upset at "1" generates all eight upsets of the first
    // ladder pair, entering the last one only at the third stratum
    Poset star = p_star(1);
    const Mask gen = bit(star.index_of("1"));
    const GenerationTrace t = generated_subalgebra(star, {gen});
    CHECK(t.stabilization_depth == 3);
    CHECK(t.subalgebra().size() == all_upsets(star).size());
  }
}

TEST_CASE("generation depth on chains and small rooted posets") {
  for (int n = 1; n <= 6; ++n) {
    const Poset c = Poset::chain(n);
    const auto ups = all_upsets(c);
    for (Mask u : ups)
      for (Mask v : ups) CHECK(generation_depth(c, {u, v}) <= 2);
  }
  {
    // a single maximal singleton of the 3-fork: its complement and the
    // two-thirds join enter at the first stratum and generation stops there
    const Poset q8 = q_poset(8);
    const GenerationTrace t = generated_subalgebra(q8, {named_set(q8, {"t0"})});
    CHECK(t.stabilization_depth == 1);
    CHECK(t.subalgebra().size() == 5);
  }
  SUBCASE("depth 0 exactly when the lattice closure of the generators is everything") {
    for (const Poset& p : {Poset::chain(3), Poset::fork(2), q_poset(6)}) {
      std::vector<Mask> gens;
      for (int x = 0; x < p.size(); ++x) gens.push_back(p.up(x));
      const GenerationTrace t = generated_subalgebra(p, gens);
      const bool all_at_zero = t.strata[0].size() == all_upsets(p).size();
      CHECK((t.stabilization_depth == 0) == all_at_zero);
    }
  }
}

TEST_CASE("generation depth is bounded by 2*depth - 1") {
  // exhaustive over rooted posets with <= 5 points and single or paired
  // generators; spot checks at 6 points
  for (int n = 1; n <= 5; ++n)
    for (const Poset& p : all_rooted_posets(n)) {
      const int bound = 2 * p.depth() - 1;
      const auto ups = all_upsets(p);
      for (Mask u : ups) {
        CHECK(generation_depth(p, {u}) <= std::max(bound, 0));
        for (Mask v : ups) CHECK(generation_depth(p, {u, v}) <= std::max(bound, 0));
      }
    }
  for (const Poset& p : all_rooted_posets(6)) {
    const int bound = 2 * p.depth() - 1;
    const auto ups = all_upsets(p);
    for (Mask u : ups) CHECK(generation_depth(p, {u}) <= std::max(bound, 0));
  }
}

namespace {

// Independent oracle: treat every element as the truth set of some term and
// relax the minimal implication depth needed to produce it, starting from
// the generators with bot and top. Meets and joins keep the maximum of the
// operand depths, implications add one.
std::map<Mask, int> term_depths(const Poset& p, const std::vector<Mask>& gens) {
  std::map<Mask, int> depth;
  depth[0] = 0;
  depth[p.all()] = 0;
  for (Mask g : gens) depth[g] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<std::pair<Mask, int>> snapshot(depth.begin(), depth.end());
    for (const auto& [a, da] : snapshot)
      for (const auto& [b, db] : snapshot) {
        const auto relax = [&](Mask u, int d) {
          const auto it = depth.find(u);
          if (it == depth.end() || it->second > d) {
            depth[u] = d;
            changed = true;
          }
        };
        relax(a & b, std::max(da, db));
        relax(a | b, std::max(da, db));
        relax(heyting_implies(p, a, b), std::max(da, db) + 1);
      }
  }
  return depth;
}

}  // namespace

TEST_CASE("strata agree with the term-depth relaxation oracle") {
  const Poset fork = Poset::fork(2);
  const Poset chain = Poset::chain(2);
  struct Case {
    Poset p;
    std::vector<Mask> gens;
  };
  std::vector<Case> cases;
  cases.push_back({fork, {named_set(fork, {"t0"})}});
  cases.push_back({p_star(1), {bit(p_star(1).index_of("1"))}});
  cases.push_back({Poset::chain(4), {bit(1) | bit(2) | bit(3), bit(3)}});
  cases.push_back({disjoint_union(fork, chain),
                   {named_set(fork, {"t0"}) | (bit(chain.index_of("c1")) << fork.size())}});
  for (const auto& c : cases) {
    const auto depth = term_depths(c.p, c.gens);
    const GenerationTrace t = generated_subalgebra(c.p, c.gens);
    int max_depth = 0;
    for (const auto& [u, d] : depth) max_depth = std::max(max_depth, d);
    CHECK(max_depth == t.stabilization_depth);
    for (std::size_t i = 0; i < t.strata.size(); ++i) {
      std::set<Mask> expect;
      for (const auto& [u, d] : depth)
        if (d <= static_cast<int>(i)) expect.insert(u);
      CHECK(expect == std::set<Mask>(t.strata[i].begin(), t.strata[i].end()));
    }
  }
}

TEST_CASE("product generation depth check") {
  const Poset chain = Poset::chain(2);
  {
    // one generator projecting to the top of each chain
    const Mask g = bit(1) | (bit(1) << 2);
    const ProductDepthCheck c = product_generation_depth_check(chain, chain, {g});
    CHECK(c.union_depth == 0);
    CHECK(c.depth_p == 0);
    CHECK(c.depth_q == 0);
    CHECK(c.equal);
  }
  {
    // a paired generator with proper projections on both components: the
    // union's strata outrun both component depths (the amalgam has no
    // definable projections, so elements like full-on-one-side appear late)
    const Poset fork = Poset::fork(2);
    const Mask g = bit(fork.index_of("t0")) | (bit(chain.index_of("c1")) << fork.size());
    const ProductDepthCheck c = product_generation_depth_check(fork, chain, {g});
    CHECK(c.depth_p == 1);
    CHECK(c.depth_q == 0);
    CHECK(c.union_depth == 3);
    CHECK_FALSE(c.equal);
  }
}
