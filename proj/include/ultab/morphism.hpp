#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultab/formula.hpp"
#include "ultab/poset.hpp"

namespace ultab {

// Order-preserving map with the back condition:
// f(x) <= y implies some x' >= x has f(x') = y.
struct PMorphism {
  Poset source;
  Poset target;
  std::vector<int> map;
};

struct PMorphismCheck {
  bool ok;
  std::string violation;  // human-readable witness when !ok
};

PMorphismCheck check_pmorphism(const std::vector<int>& f, const Poset& p,
                               const Poset& q);

// All surjective p-morphisms p ->> q, sorted by the map vector.
std::vector<PMorphism> surjective_pmorphisms(const Poset& p, const Poset& q,
                                             std::size_t cap = 5'000'000);
std::optional<std::vector<int>> find_surjective_pmorphism(const Poset& p,
                                                          const Poset& q);

// All p-morphic images up to isomorphism (quotients by fibre partitions),
// ordered by (size, canonical form).
std::vector<Poset> pmorphic_images(const Poset& p, std::size_t cap = 10);

struct JankovWitness {
  int world;             // x with up(x) ->> q
  std::vector<int> map;  // over principal_upset(p, world)
};

// p refutes the Jankov formula of q iff q is the image of some principal
// upset of p. The (equivalent) rooted-subframe-of-an-image reading is
// exposed separately as a cross-check.
std::optional<JankovWitness> jankov_refutes(const Poset& p, const Poset& q);
bool jankov_refutes_via_images(const Poset& p, const Poset& q, std::size_t cap = 10);

// Conjunction over the axiom set; axioms with a registered semantic check
// dispatch to it, the rest go through frame_validates (cap applies there).
bool validates_axiomset(const Poset& p, const AxiomSet& a,
                        std::size_t cap = 10'000'000);

// Validity of jankov_syntactic(q) on p by valuation enumeration, pruned by
// the monotonicity of the diagram premise (its truth set only shrinks as
// variables get bound). Agrees with frame_validates on the same formula but
// stays feasible for larger upset counts; independent of jankov_refutes.
bool jankov_syntactic_validates(const Poset& p, const Poset& q);

// semantic checkers, each equivalent to validity of the matching axiom on
// finite rooted frames
bool frame_has_kc(const Poset& p);   // every principal upset has one maximal point
bool frame_has_bw2(const Poset& p);  // width <= 2
bool frame_has_bd(const Poset& p, int n);  // depth <= n

}  // namespace ultab
