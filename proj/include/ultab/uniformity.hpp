#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultab/bisim.hpp"
#include "ultab/model.hpp"
#include "ultab/poset.hpp"

namespace ultab {

// A class of rooted frames closed under taking p-morphic images of
// principal upsets, deduplicated up to isomorphism and canonically ordered.
struct FrameClass {
  std::vector<Poset> generators;
  std::vector<Poset> closure;
};

FrameClass frame_closure(std::vector<Poset> gens, std::size_t image_cap = 10,
                         std::size_t frame_cap = 4096);
// Wraps a family that is already closed; with verify set this is checked
// (every image of every principal upset of a member is a member).
FrameClass frame_class_of(std::vector<Poset> frames, bool verify = true,
                          std::size_t image_cap = 10);

// All reduced models over the closure frames with `vars` variables, up to
// colored isomorphism.
struct ModelClass {
  int var_count;
  std::vector<Model> models;
};
ModelClass enumerate_models(const FrameClass& fc, int vars,
                            std::size_t cap = 500000);

struct WitnessPair {
  Model left, right;
  int level;  // exact maximal finite bisimulation level of the pair
};

struct SearchOptions {
  // v_max < 0: search joint color patterns, which covers every variable
  // count at once (any pair of reduced models realizes its pattern with at
  // most |F1|+|F2| variables). v_max >= 0: concrete colorings over exactly
  // v_max variables.
  int v_max = -1;
  std::size_t model_cap = 500000;
};

struct UniformityReport {
  bool certified;
  int n;
  std::optional<WitnessPair> witness;  // n-bisimilar non-bisimilar pair
  std::string envelope;
  long long pairs_checked = 0;
};

struct DegreeReport {
  int degree;
  std::optional<WitnessPair> witness;  // pair realizing level degree-1
  std::string envelope;
  long long pairs_checked = 0;
};

// Least n such that every n-bisimilar pair of reduced models over the class
// is fully bisimilar, i.e. 1 + the largest finite level over non-isomorphic
// pairs within the envelope.
DegreeReport degree_of_uniformity(const FrameClass& fc, const SearchOptions& opt = {});
DegreeReport degree_of_uniformity(const Poset& p, const SearchOptions& opt = {});

// Certified when no pair inside the envelope is n-bisimilar without being
// fully bisimilar; refuted with the first such pair otherwise. The claim is
// bounded by the reported envelope.
UniformityReport certify_n_uniform(const FrameClass& fc, int n,
                                   const SearchOptions& opt = {});

// Boolean sums of width <= width_cap with a single maximal point and
// stack-depth <= k, up to size_cap points, certified at n = k+1.
UniformityReport stack_bound_uniformity_check(int k, int width_cap, int size_cap,
                                              const SearchOptions& opt = {});

}  // namespace ultab
