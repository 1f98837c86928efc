#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultab/formula.hpp"
#include "ultab/poset.hpp"

namespace ultab {

using Color = std::uint32_t;  // bit j = vars[j] true

// Rooted Kripke model: frame + order-preserving coloring.
struct Model {
  Poset frame;
  std::vector<std::string> vars;
  std::vector<Color> color;  // per world

  Model() = default;
  Model(Poset f, std::vector<std::string> v, std::vector<Color> c);

  int root() const { return frame.root_or_throw(); }
  Color color_of(int w) const { return color[w]; }
  CanonicalForm canonical() const { return canonical_form_colored(frame, color); }
};

// Map from variable names to upsets of a fixed poset.
using Valuation = std::map<std::string, Mask, std::less<>>;

Mask eval(const Model& m, const FormulaPtr& f);
bool satisfies(const Model& m, const FormulaPtr& f);  // at the root
Mask eval_with(const Poset& p, const Valuation& v, const FormulaPtr& f);

// {x : every y >= x in u lies in v}
Mask heyting_implies(const Poset& p, Mask u, Mask v);

struct ValidityResult {
  bool valid;
  Valuation countervaluation;  // lexicographically least failure, when invalid
};

// Checks every valuation of the free variables; throws CapExceeded when
// |Up(P)|^vars exceeds `cap` evaluations.
ValidityResult frame_validates(const Poset& p, const FormulaPtr& f,
                               std::size_t cap = 10'000'000);

// greatest auto-bisimulation is the identity
bool is_reduced(const Model& m);
// quotient by the greatest auto-bisimulation; class names are the
// lexicographically least member names
Model reduce(const Model& m);

// All order-preserving colorings of `frame` over `vars`, in a fixed order.
std::vector<Model> all_models(const Poset& frame, std::vector<std::string> vars,
                              std::size_t cap = 1u << 22);

}  // namespace ultab
