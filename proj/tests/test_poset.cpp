#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ultab/families.hpp"
#include "ultab/poset.hpp"

using namespace ultab;

namespace {

// independent brute-force oracle: all partial orders on n labelled points,
// via every reflexive relation matrix filtered for the axioms
int count_posets_brute(int n) {
  const int bits = n * n;
  std::set<std::vector<std::uint64_t>> classes;
  for (Mask rel = 0; rel < (Mask{1} << bits); ++rel) {
    auto leq = [&](int i, int j) { return (rel >> (i * n + j)) & 1; };
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = leq(i, i);
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && leq(i, j) && leq(j, i)) ok = false;
        for (int k = 0; k < n && ok; ++k)
          if (leq(i, j) && leq(j, k) && !leq(i, k)) ok = false;
      }
    if (!ok) continue;
    std::vector<Mask> up(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq(i, j)) up[i] |= bit(j);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
    classes.insert(canonical_form(Poset::from_leq(names, up)).code);
  }
  return static_cast<int>(classes.size());
}

Poset random_poset(std::mt19937& rng, int max_n) {
  std::uniform_int_distribution<int> size(1, max_n);
  const int n = size(rng);
  std::vector<std::pair<int, int>> covers;
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) == 0) covers.emplace_back(i, j);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return Poset::from_covers(names, covers);
}

}  // namespace

TEST_CASE("construction validates the order axioms") {
  // not reflexive at the second world
  CHECK_THROWS_AS(Poset::from_leq({"a", "b"}, {1, 1}, std::nullopt), std::invalid_argument);
  // a cycle through covers violates antisymmetry after closure
  CHECK_THROWS_AS(Poset::from_covers({"a", "b"}, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Poset::from_covers({"a", "a"}, {}), std::invalid_argument);
  // root must be below everything
  CHECK_THROWS_AS(Poset::from_covers({"a", "b"}, {}, 0), std::invalid_argument);
}

TEST_CASE("up_closure") {
  const Poset fork = Poset::fork(2);
  CHECK(up_closure(fork, bit(0)) == fork.all());
  const Poset chain = Poset::chain(2);
  CHECK(up_closure(chain, bit(1)) == bit(1));
  const Poset p4 = rn_prefix(4);
  const int p2 = p4.index_of("P2");
  CHECK(up_closure(p4, bit(p2)) ==
        (bit(p2) | bit(p4.index_of("1")) | bit(p4.index_of("0"))));
  CHECK_THROWS_AS(up_closure(chain, bit(5)), std::invalid_argument);

  SUBCASE("idempotent and monotone") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const Poset p = random_poset(rng, 7);
      std::uniform_int_distribution<Mask> sets(0, p.all());
      const Mask s = sets(rng) & p.all();
      const Mask t = sets(rng) & p.all();
      const Mask cs = up_closure(p, s);
      CHECK(up_closure(p, cs) == cs);
      CHECK((up_closure(p, s & t) & ~cs) == 0);
      CHECK(p.is_upset(cs));
    }
  }
}

TEST_CASE("rooted upsets") {
  auto third = [](const Poset& p) { return rooted_upsets(p, true); };
  CHECK(third(Poset::chain(2)).size() == 2);
  CHECK(third(Poset::fork(2)).size() == 2);  // the two tops collapse
  // the diamond shows up as the principal upset of a middle point of Q5
  const auto q5_ups = rooted_upsets(q_poset(5), true);
  const bool has_diamond = std::any_of(q5_ups.begin(), q5_ups.end(), [](const Poset& u) {
    return is_isomorphic(u, q_poset(6));
  });
  CHECK(has_diamond);
  for (int n = 1; n <= 6; ++n)
    for (const Poset& p : all_rooted_posets(n))
      CHECK(rooted_upsets(p, true).size() <= static_cast<std::size_t>(p.size()));
}

TEST_CASE("depth and width") {
  CHECK(Poset::chain(2).depth() == 2);
  CHECK(Poset::point().depth() == 1);
  CHECK(q_poset(5).depth() == 4);
  CHECK(width(q_poset(8)) == 3);
  CHECK(width(Poset::chain(5)) == 1);
  CHECK(width(q_poset(4)) == 2);
}

TEST_CASE("isomorphism and canonical forms") {
  const Poset fork = Poset::fork(2);
  const Poset fork2 = Poset::from_covers({"x", "y", "z"}, {{2, 0}, {2, 1}}, 2);
  CHECK(is_isomorphic(fork, fork2));
  const auto w = find_isomorphism(fork, fork2);
  REQUIRE(w.has_value());
  CHECK((*w)[0] == 2);  // root to root
  CHECK_FALSE(is_isomorphic(q_poset(2), q_poset(4)));
  CHECK_FALSE(is_isomorphic(Poset::chain(2), fork));

  SUBCASE("canonical form matches the search on random pairs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const Poset a = random_poset(rng, 7);
      const Poset b = random_poset(rng, 7);
      CHECK((canonical_form(a) == canonical_form(b)) == is_isomorphic(a, b));
    }
  }
}

TEST_CASE("all_upsets") {
  CHECK(all_upsets(Poset::chain(2)).size() == 3);
  CHECK(all_upsets(Poset::fork(2)).size() == 5);
  CHECK(all_upsets(Poset::antichain(3)).size() == 8);
  CHECK_THROWS_AS(all_upsets(Poset::antichain(10), 100), CapExceeded);
  for (Mask u : all_upsets(q_poset(3))) CHECK(q_poset(3).is_upset(u));
}

TEST_CASE("linear sum") {
  CHECK(is_isomorphic(linear_sum(Poset::point(), Poset::point()), Poset::chain(2)));
  const Poset sum = linear_sum(Poset::fork(2), Poset::point());
  CHECK(sum.size() == 4);
  CHECK(sum.rooted());
  CHECK(sum.depth() == 3);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Poset a = random_poset(rng, 5);
    const Poset b = random_poset(rng, 5);
    CHECK(linear_sum(a, b).depth() == a.depth() + b.depth());
  }
}

TEST_CASE("poset enumeration agrees with a brute-force oracle") {
  for (int n = 1; n <= 4; ++n)
    CHECK(static_cast<int>(all_posets(n).size()) == count_posets_brute(n));
  // continues 63, 318 at n = 5, 6
  CHECK(all_posets(5).size() == 63);
  CHECK(all_posets(6).size() == 318);
  CHECK(all_rooted_posets(6).size() == 63);
  for (const Poset& p : all_rooted_posets(4)) CHECK(p.rooted());
}
