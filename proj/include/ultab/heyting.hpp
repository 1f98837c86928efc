#pragma once

#include <cstddef>
#include <vector>

#include "ultab/poset.hpp"

namespace ultab {

// Depth-stratified generation of a subalgebra of Up(P): stratum 0 is the
// meet/join closure of the generators with bot and top, stratum i+1 adds all
// implications between stratum-i elements and closes under meet/join again.
// Strata are increasing and stabilize at the generated subalgebra.
struct GenerationTrace {
  std::vector<Mask> generators;
  std::vector<std::vector<Mask>> strata;  // each sorted by (popcount, mask)
  int stabilization_depth;                // least i with strata[i] == strata[i+1]

  const std::vector<Mask>& subalgebra() const { return strata.back(); }
};

GenerationTrace generated_subalgebra(const Poset& p, const std::vector<Mask>& gens,
                                     std::size_t cap = 1u << 20);
int generation_depth(const Poset& p, const std::vector<Mask>& gens,
                     std::size_t cap = 1u << 20);

// Compares generation over the disjoint union of p and q (whose upset
// algebra is the product of the component algebras) against the maximum of
// the component depths for the projected generators. `gens` live on the
// union, p's worlds first.
struct ProductDepthCheck {
  int union_depth;
  int depth_p;
  int depth_q;
  bool equal;  // union_depth == max(depth_p, depth_q)
};

ProductDepthCheck product_generation_depth_check(const Poset& p, const Poset& q,
                                                 const std::vector<Mask>& gens,
                                                 std::size_t cap = 1u << 20);

}  // namespace ultab
