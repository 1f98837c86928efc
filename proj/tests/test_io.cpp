#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ultab/families.hpp"
#include "ultab/io.hpp"

using namespace ultab;

TEST_CASE("poset json round trip") {
  for (int i = 1; i <= 8; ++i) {
    const Poset p = q_poset(i);
    const Poset back = poset_from_json(poset_to_json(p));
    CHECK(back == p);
  }
  const Poset star = p_star(2);
  CHECK(poset_from_json(poset_to_json(star)) == star);
}

TEST_CASE("model json round trip") {
  for (const auto& [l, r] : figure4_pairs()) {
    const Model bl = model_from_json(model_to_json(l));
    CHECK(bl.frame == l.frame);
    CHECK(bl.vars == l.vars);
    CHECK(bl.color == l.color);
    CHECK(model_from_json(model_to_json(r)).color == r.color);
  }
}

TEST_CASE("schema violations carry a path") {
  CHECK_THROWS_AS(poset_from_json("{"), SchemaError);
  CHECK_THROWS_AS(poset_from_json(R"({"worlds": ["a"], "covers": [["a","b"]]})"),
                  SchemaError);
  CHECK_THROWS_AS(poset_from_json(R"({"worlds": ["a","b"], "covers": [["a","b"],["b","a"]]})"),
                  SchemaError);
  // non-monotone coloring is rejected
  const char* bad = R"({"worlds": ["r","t"], "covers": [["r","t"]], "root": "r",
                        "vars": ["p"], "colors": {"r": "1", "t": "0"}})";
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  const char* bad_bits = R"({"worlds": ["r"], "covers": [], "root": "r",
                             "vars": ["p"], "colors": {"r": "x"}})";
  CHECK_THROWS_AS(model_from_json(bad_bits), SchemaError);
}

TEST_CASE("dot export counts") {
  const std::string dot = poset_to_dot(q_poset(5));
  std::size_t nodes = 0, edges = 0, pos = 0;
  for (pos = 0; (pos = dot.find("[label=", pos)) != std::string::npos; ++pos) ++nodes;
  for (pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
  CHECK(nodes == 6);
  CHECK(edges == 8);
  CHECK(dot.find("rank=same") != std::string::npos);
}
