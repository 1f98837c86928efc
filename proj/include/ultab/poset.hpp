#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ultab {

// A set of worlds of a fixed poset, bit i = world i.
using Mask = std::uint64_t;

constexpr int kMaxWorlds = 62;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest_bit(Mask m) { return __builtin_ctzll(m); }
inline Mask bit(int i) { return Mask{1} << i; }

// Thrown when an enumeration would exceed a configured cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite poset on worlds 0..n-1. The order is stored as reachability
// masks (up[i] = all j with i <= j, including i). Reflexivity,
// transitivity and antisymmetry are validated at construction; a root,
// when present, must lie below every world.
class Poset {
public:
  Poset() = default;

  static Poset from_leq(std::vector<std::string> names, std::vector<Mask> up,
                        std::optional<int> root = std::nullopt);
  // covers are immediate-cover pairs (a, b) meaning a < b; the order is
  // their reflexive-transitive closure. Cycles are rejected.
  static Poset from_covers(std::vector<std::string> names,
                           const std::vector<std::pair<int, int>>& covers,
                           std::optional<int> root = std::nullopt);

  static Poset point();
  static Poset chain(int n);      // rooted, bottom = world 0
  static Poset antichain(int n);  // not rooted for n > 1
  static Poset fork(int branches);  // root 0 below `branches` maximal points

  int size() const { return static_cast<int>(up_.size()); }
  Mask all() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }
  bool leq(int a, int b) const { return (up_[a] >> b) & 1; }
  Mask up(int i) const { return up_[i]; }
  Mask down(int i) const { return down_[i]; }
  Mask strict_up(int i) const { return up_[i] & ~bit(i); }
  std::optional<int> root() const { return root_; }
  int root_or_throw() const;
  bool rooted() const { return root_.has_value(); }

  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  // -1 when absent
  int index_of(std::string_view name) const;

  Mask covers_above(int i) const;  // immediate covers of i
  Mask covers_below(int i) const;
  std::vector<std::pair<int, int>> cover_pairs() const;  // (lower, upper)

  // depth counted in points: a maximal world has depth 1
  int depth_of(int x) const;
  int depth() const;
  Mask maximal_worlds() const;
  Mask minimal_worlds() const;

  bool is_upset(Mask m) const;

  friend bool operator==(const Poset& a, const Poset& b) = default;

private:
  std::vector<std::string> names_;
  std::vector<Mask> up_;
  std::vector<Mask> down_;
  std::optional<int> root_;

  void validate() const;
  void fill_down();
};

// Smallest upset containing s.
Mask up_closure(const Poset& p, Mask s);

// All upsets, ordered by (popcount, mask value). Throws CapExceeded when
// more than `cap` would be produced.
std::vector<Mask> all_upsets(const Poset& p, std::size_t cap = 1u << 20);
std::size_t count_upsets(const Poset& p, std::size_t cap = 1u << 20);

// Sub-poset induced on `mask`; names kept; root optional (index in p).
Poset subposet(const Poset& p, Mask mask, std::optional<int> root = std::nullopt);
// The principal upset of x as a poset rooted at x.
Poset principal_upset(const Poset& p, int x);
// One principal upset per world; with dedup, one per isomorphism class.
std::vector<Poset> rooted_upsets(const Poset& p, bool dedup_iso = false);

// Disjoint union placing every world of `bottom` below every world of `top`.
Poset linear_sum(const Poset& top, const Poset& bottom);
Poset disjoint_union(const Poset& a, const Poset& b);

// Largest antichain inside `within` (the whole poset by default).
int max_antichain(const Poset& p, Mask within);
// max over x of the largest antichain contained in the principal upset of x
int width(const Poset& p);

// Total encoding equal exactly for isomorphic (optionally colored) posets.
struct CanonicalForm {
  std::vector<std::uint64_t> code;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Poset& p);
CanonicalForm canonical_form_colored(const Poset& p,
                                     const std::vector<std::uint32_t>& color);

// Order isomorphism witness (images indexed by world of p), if one exists.
// Roots, being unique minima, are always matched to each other.
std::optional<std::vector<int>> find_isomorphism(const Poset& p, const Poset& q);
std::optional<std::vector<int>> find_isomorphism_colored(
    const Poset& p, const std::vector<std::uint32_t>& pc, const Poset& q,
    const std::vector<std::uint32_t>& qc);
bool is_isomorphic(const Poset& p, const Poset& q);

// All posets on exactly n points, up to isomorphism, canonically ordered.
std::vector<Poset> all_posets(int n);
// All rooted posets on exactly n points, up to isomorphism.
std::vector<Poset> all_rooted_posets(int n);

}  // namespace ultab
