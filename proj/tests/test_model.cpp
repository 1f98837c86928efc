#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ultab/bisim.hpp"
#include "ultab/families.hpp"
#include "ultab/model.hpp"

using namespace ultab;

TEST_CASE("model construction enforces monotone colors and a root") {
  CHECK_THROWS_AS(Model(Poset::antichain(2), {"p"}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Model(Poset::chain(2), {"p"}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Model(Poset::chain(2), {"p"}, {0, 2}), std::invalid_argument);
  CHECK_NOTHROW(Model(Poset::chain(2), {"p"}, {0, 1}));
}

TEST_CASE("evaluation") {
  auto [chain, fork] = figure2_pair();
  const FormulaPtr p = parse_formula("p");
  CHECK(eval(chain, p) == bit(1));
  CHECK(eval(chain, ftop()) == chain.frame.all());
  CHECK_FALSE(satisfies(fork, parse_formula("~~p")));
  CHECK(satisfies(chain, parse_formula("~~p")));
  CHECK_THROWS_AS(eval(chain, fvar("missing")), std::invalid_argument);
  SUBCASE("truth sets are upsets") {
    std::mt19937 rng(9);
    for (const auto& m : all_models(q_poset(3), {"p", "q"}))
      for (const char* s : {"p->q", "~p | ~~q", "(p->q)->q", "p & ~q"})
        CHECK(m.frame.is_upset(eval(m, parse_formula(s))));
    (void)rng;
  }
}

TEST_CASE("frame validity") {
  CHECK(frame_validates(Poset::point(), parse_formula("p | ~p")).valid);
  const FormulaPtr lc = named_axiom("LC").axioms[0].formula;
  for (int n = 1; n <= 5; ++n) CHECK(frame_validates(Poset::chain(n), lc).valid);
  CHECK_FALSE(frame_validates(Poset::fork(2), lc).valid);
  SUBCASE("least countervaluation is reported") {
    const Poset fork = Poset::fork(2);
    const ValidityResult r = frame_validates(fork, parse_formula("~p | ~~p"));
    REQUIRE_FALSE(r.valid);
    REQUIRE(r.countervaluation.count("p"));
    CHECK(r.countervaluation.at("p") == bit(fork.index_of("t0")));
  }
  CHECK_THROWS_AS(frame_validates(Poset::antichain(4), bounded_depth_axiom(5), 100),
                  CapExceeded);
}

TEST_CASE("reduced models") {
  CHECK(is_reduced(Model(Poset::chain(2), {"p"}, {0, 1})));
  CHECK_FALSE(is_reduced(Model(Poset::chain(2), {"p"}, {0, 0})));
  CHECK_FALSE(is_reduced(Model(Poset::fork(2), {"p"}, {0, 1, 1})));

  SUBCASE("reduce collapses to the quotient") {
    const Model m(Poset::chain(2), {"p"}, {0, 0});
    CHECK(reduce(m).frame.size() == 1);
    const Model f(Poset::fork(2), {"p"}, {0, 1, 1});
    const Model r = reduce(f);
    CHECK(r.frame.size() == 2);
    CHECK(is_reduced(r));
    CHECK(find_isomorphism_colored(r.frame, r.color, Poset::chain(2), {0, 1}).has_value());
  }

}

TEST_CASE("reduction preserves the root theory") {
  const std::vector<FormulaPtr> probes = {
      parse_formula("p1"),
      parse_formula("~p1"),
      parse_formula("~~p1 | ~p2"),
      parse_formula("(p1 -> p2) -> p2"),
      parse_formula("p1 | (p1 -> p2)"),
      parse_formula("p2 | (p2 -> (p1 | ~p1))")};
  for (const Poset& f : all_rooted_posets(4))
    for (const Model& m : all_models(f, {"p1", "p2"})) {
      const Model r = reduce(m);
      CHECK(is_reduced(r));
      const Model rr = reduce(r);
      CHECK(find_isomorphism_colored(r.frame, r.color, rr.frame, rr.color).has_value());
      for (const FormulaPtr& probe : probes)
        CHECK(satisfies(m, probe) == satisfies(r, probe));
    }
}

TEST_CASE("alpha/beta characterization of reducedness") {
  // a model is reduced iff no point has a single equally-colored immediate
  // successor and no two points share strict upset and color
  for (int n = 1; n <= 5; ++n)
    for (const Poset& f : all_rooted_posets(n))
      for (const Model& m : all_models(f, {"p1", "p2"})) {
        bool alpha_beta = true;
        for (int x = 0; x < f.size() && alpha_beta; ++x) {
          const Mask cov = f.covers_above(x);
          if (popcount(cov) == 1 && m.color[x] == m.color[lowest_bit(cov)])
            alpha_beta = false;
          for (int y = x + 1; y < f.size() && alpha_beta; ++y)
            if (f.strict_up(x) == f.strict_up(y) && m.color[x] == m.color[y])
              alpha_beta = false;
        }
        CHECK(alpha_beta == is_reduced(m));
      }
}
