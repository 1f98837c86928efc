#pragma once

#include <utility>
#include <vector>

#include "ultab/model.hpp"
#include "ultab/poset.hpp"

namespace ultab {

// ------------------------------------------------ Rieger-Nishimura ladder
//
// Worlds "1" and "0" on top; "P1" covered by 1; "P2" covered by 1 and 0;
// "Pj" covered by P(j-2) and P(j-3) for j >= 3 (reading P0 = 0, P-1 = 1).
// rn_prefix(i) is the principal upset of Pi, rooted there; it omits P(i-1)
// and has i+1 points.
Poset rn_prefix(int i, int cap = 40);
// the one-variable model on rn_prefix(i): p true exactly at "1"
Model rn_canonical_model(int i);
// union upset generated by P(2n) and P(2n-1); not rooted
Poset p_star(int n);
// rn_prefix(i) with a fresh greatest element on top
Poset p_prime(int i);

// ------------------------------------------------------------------ combs
//
// Spine x1 < ... < xn with a maximal tooth yi above each xi (yi >= xj iff
// j <= i). A broken comb keeps the whole spine and any subset of teeth.
Poset comb(int n);
Poset broken_comb(int n, const std::vector<int>& teeth);  // teeth are 1-based
std::vector<Poset> broken_combs(int n);                   // all 2^n tooth subsets
// all broken combs with at most max_points worlds, up to isomorphism
std::vector<Poset> broken_combs_upto(int max_points);
bool is_broken_comb(const Poset& p);

// ----------------------------------------------------------- Boolean sums
//
// Rooted poset where covers drop exactly one depth level and consecutive
// levels are completely bipartite.
bool is_boolean_sum(const Poset& p);

struct StackProfile {
  std::vector<int> level_sizes;  // level_sizes[j] = #worlds of depth j+1
  int stack_depth;               // longest run of consecutive levels of size >= 2
};
StackProfile stack_profile(const Poset& p);

// the Boolean sum with the given level sizes, top level first; the last
// size must be 1 for the result to be rooted
Poset boolean_sum(const std::vector<int>& level_sizes);
// all rooted Boolean sums with at most max_points worlds (and, optionally,
// level sizes capped by max_width), up to isomorphism
std::vector<Poset> boolean_sums_upto(int max_points, int max_width = -1);

// ------------------------------------------------------- ladder of models
//
// Both families have layers 0..k of two elements, consecutive layers
// completely bipartite, and a root under the last layer. Layer j is colored
// 1^(n-j)0^j on the left and 1^(n-j-1)0^(j+1) on the right. The m-root
// repeats the right color of layer k; the n-root goes one lower.
Model m_model(int n, int k);  // requires n > 2, k + 1 < n
Model n_model(int n, int k);  // requires n > 2, k + 2 <= n

// frame of n_model(n, n-2) plus a fresh greatest element
Poset s_frame(int n);  // requires n >= 3

// ------------------------------------------------------- fixed small data
//
// The eight benchmark posets: Q1 tadpole, Q2 incomplete 1-2-2, Q3 uneven
// diamond with top, Q4 complete 1-2-2, Q5 = Q4 plus top, Q6 diamond,
// Q7 two 2-chains over a root, Q8 3-fork.
Poset q_poset(int i);

// the 1-bisimilar, non-bisimilar pair: 2-chain (0;1) and fork (0;1,0)
std::pair<Model, Model> figure2_pair();
// five 2-bisimilar non-bisimilar pairs; the left frame of pair i is Q(i+1)
std::vector<std::pair<Model, Model>> figure4_pairs();

}  // namespace ultab
