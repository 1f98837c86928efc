#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ultab/families.hpp"
#include "ultab/formula.hpp"
#include "ultab/model.hpp"

using namespace ultab;

namespace {

FormulaPtr random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 6);
  switch (pick(rng)) {
    case 0: return fvar("p");
    case 1: return fvar("q");
    case 2: return fbot();
    case 3: return ftop();
    case 4: return fand(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return f_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: return fimp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser precedence and sugar") {
  CHECK(struct_equal(parse_formula("p -> q | r"), fimp(fvar("p"), f_or(fvar("q"), fvar("r")))));
  CHECK(struct_equal(parse_formula("~~p"), fimp(fimp(fvar("p"), fbot()), fbot())));
  CHECK(struct_equal(parse_formula("p & q | r"), f_or(fand(fvar("p"), fvar("q")), fvar("r"))));
  // -> is right associative
  CHECK(struct_equal(parse_formula("p -> q -> r"), fimp(fvar("p"), fimp(fvar("q"), fvar("r")))));
  CHECK(struct_equal(parse_formula("p <-> q"),
                     fand(fimp(fvar("p"), fvar("q")), fimp(fvar("q"), fvar("p")))));
  const FormulaPtr wpl = parse_formula("(q->p) | (((p->q)->p)->p)");
  const FormulaPtr expect =
      f_or(fimp(fvar("q"), fvar("p")),
           fimp(fimp(fimp(fvar("p"), fvar("q")), fvar("p")), fvar("p")));
  CHECK(struct_equal(wpl, expect));
  CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
}

TEST_CASE("print then parse is the identity on desugared trees") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const FormulaPtr f = random_formula(rng, 4);
    CHECK(struct_equal(parse_formula(print_formula(f)), f));
  }
}

TEST_CASE("implication depth") {
  CHECK(impl_depth(fvar("p")) == 0);
  CHECK(impl_depth(fbot()) == 0);
  CHECK(impl_depth(parse_formula("(p->q) | (q->p)")) == 1);
  CHECK(impl_depth(parse_formula("(q->p) | (((p->q)->p)->p)")) == 3);
  std::mt19937 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const FormulaPtr f = random_formula(rng, 4);
    CHECK(impl_depth(fneg(f)) == impl_depth(f) + 1);
  }
}

TEST_CASE("bounded depth axioms") {
  CHECK(struct_equal(bounded_depth_axiom(0), fvar("p0")));
  CHECK(struct_equal(bounded_depth_axiom(1),
                     f_or(fvar("p1"), fimp(fvar("p1"), fvar("p0")))));
  for (int n = 0; n <= 8; ++n) CHECK(impl_depth(bounded_depth_axiom(n)) == n);
}

TEST_CASE("free variables in order of first occurrence") {
  auto fv = [](const char* s) { return free_vars(parse_formula(s)); };
  CHECK((fv("p -> q") == std::vector<std::string>{"p", "q"}));
  CHECK((free_vars(bounded_depth_axiom(2)) == std::vector<std::string>{"p2", "p1", "p0"}));
  CHECK(fv("top").empty());
}

TEST_CASE("named axiom sets") {
  CHECK(struct_equal(named_axiom("LC").axioms[0].formula,
                     parse_formula("(p->q) | (q->p)")));
  CHECK(struct_equal(named_axiom("KC").axioms[0].formula, parse_formula("~p | ~~p")));
  CHECK(named_axiom("2Uni").axioms.size() == 3);
  CHECK(named_axiom("LFC").axioms.size() == 6);
  CHECK(named_axiom("Box").axioms.size() == 3);
  CHECK(named_axiom("BD3").axioms.size() == 1);
  CHECK_THROWS_AS(named_axiom("nope"), std::invalid_argument);
}

TEST_CASE("syntactic Jankov formulas") {
  CHECK(jankov_syntactic(Poset::point()).upsets.size() == 2);
  CHECK(jankov_syntactic(q_poset(8)).upsets.size() == 9);
  CHECK_THROWS_AS(jankov_syntactic(Poset::antichain(2)), std::invalid_argument);

  SUBCASE("the identity valuation refutes the formula at the root") {
    for (int i : {1, 4, 6, 8}) {
      const Poset q = q_poset(i);
      const JankovFormula jf = jankov_syntactic(q);
      Valuation v;
      for (std::size_t k = 0; k < jf.upsets.size(); ++k)
        v[jf.var_names[k]] = jf.upsets[k];
      const Mask truth = eval_with(q, v, jf.formula);
      const bool at_root = (truth >> q.root_or_throw()) & 1;
      CHECK_FALSE(at_root);
    }
  }
}
