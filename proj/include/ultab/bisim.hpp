#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ultab/formula.hpp"
#include "ultab/model.hpp"

namespace ultab {

// Relation between worlds of two models; rows[w] is the mask of related
// worlds on the other side.
struct Relation {
  std::vector<Mask> rows;
  friend bool operator==(const Relation&, const Relation&) = default;
  bool contains(int a, int b) const { return (rows[a] >> b) & 1; }
};

// Chain S_0 >= S_1 >= ... >= S_k; level j is the greatest relation whose
// forth/back steps land in level j-1, starting from color equality.
struct LayeredBisim {
  std::vector<Relation> levels;
  const Relation& top() const { return levels.back(); }
};

Relation color_equality(const Model& m, const Model& n);
// one forth/back refinement step of `cur` into `prev`
Relation refine_step(const Model& m, const Model& n, const Relation& prev);

// layers S_0..S_k regardless of the roots
LayeredBisim layered_bisim(const Model& m, const Model& n, int k);

// greatest fixpoint of the refinement, ignoring the roots
Relation greatest_bisimulation(const Model& m, const Model& n);

// greatest bisimulation when it links the roots, absent otherwise
std::optional<Relation> full_bisim(const Model& m, const Model& n);
bool are_bisimilar(const Model& m, const Model& n);

// layered family when the roots are k-bisimilar, absent otherwise
std::optional<LayeredBisim> k_bisim(const Model& m, const Model& n, int k);
bool are_k_bisimilar(const Model& m, const Model& n, int k);

// some z above root(m) is k-bisimilar to (n, root(n))
bool leq_k(const Model& m, const Model& n, int k);

struct BisimLevel {
  enum class Kind { None, Finite, Full } kind;
  int level = -1;  // meaningful for Finite

  static BisimLevel none() { return {Kind::None, -1}; }
  static BisimLevel finite(int k) { return {Kind::Finite, k}; }
  static BisimLevel full() { return {Kind::Full, -1}; }
  bool at_least(int k) const { return kind == Kind::Full || (kind == Kind::Finite && level >= k); }
  friend bool operator==(const BisimLevel&, const BisimLevel&) = default;
};

// "full" if fully bisimilar, else the largest k <= cutoff with the roots
// k-bisimilar ("none" when even colors differ). k-bisimilarity is antitone
// in k and stabilizes within |m|*|n| steps, so the default cutoff is exact.
BisimLevel max_bisim_level(const Model& m, const Model& n, int cutoff = -1);

// Label-based variants for callers that only care about the equality
// pattern of world labels (the pattern search): monotonicity of the labels
// is never consulted.
bool is_reduced_labeled(const Poset& f, const std::vector<Color>& labels);
BisimLevel max_bisim_level_labeled(const Poset& a, const std::vector<Color>& la, int root_a,
                                   const Poset& b, const std::vector<Color>& lb, int root_b,
                                   int cutoff = -1);

// ---------------------------------------------------------------- games

struct GameMove {
  int player;   // 1 or 2
  int side;     // 0 = first model, 1 = second
  int point;
};

struct GameTranscript {
  std::vector<GameMove> moves;
  int winner;  // 1 or 2
};

// Player I picks a side and a point above the current point there; Player II
// must answer on the other side keeping the pair color-equal. II wins by
// surviving k rounds.
using StrategyI = std::function<std::pair<int, int>(int x, int y, int rounds_left)>;
using StrategyII = std::function<int(int x, int y, int side, int point, int rounds_left)>;

GameTranscript play_game(const Model& m, const Model& n, int k,
                         const StrategyI& si, const StrategyII& sii);
// strategies reading off the layered greatest relations; with both optimal
// the verdict matches k-bisimilarity of the roots
StrategyI optimal_strategy_I(const Model& m, const Model& n, int k);
StrategyII optimal_strategy_II(const Model& m, const Model& n, int k);

// Search over depth-<=k formulas (by pair truth sets) for a witness that the
// depth-<=k theory of n's root does not transfer to m's root: a formula f
// with d(f) <= k, n |= f at its root, m |/= f at its root. Exhaustive up to
// semantic equivalence on the pair, so absence is conclusive.
std::optional<FormulaPtr> distinguishing_formula(const Model& m, const Model& n,
                                                 int k, std::size_t budget = 1'000'000);

}  // namespace ultab
