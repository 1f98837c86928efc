#include "ultab/bisim.hpp"

#include <algorithm>
#include <map>

namespace ultab {

namespace {

void check_vars(const Model& m, const Model& n) {
  if (m.vars != n.vars) throw std::invalid_argument("models over different variables");
}

}  // namespace

namespace {

Relation color_equality_raw(const Poset& fa, const std::vector<Color>& ca, const Poset& fb,
                            const std::vector<Color>& cb) {
  Relation r;
  r.rows.assign(fa.size(), 0);
  for (int a = 0; a < fa.size(); ++a)
    for (int b = 0; b < fb.size(); ++b)
      if (ca[a] == cb[b]) r.rows[a] |= bit(b);
  return r;
}

void refine_raw_into(const Poset& fa, const Poset& fb, const Relation& prev,
                     Relation& next) {
  const int na = fa.size(), nb = fb.size();
  // columns of prev, for the back condition
  thread_local std::vector<Mask> col;
  col.assign(nb, 0);
  for (int a = 0; a < na; ++a)
    for (Mask t = prev.rows[a]; t; t &= t - 1) col[lowest_bit(t)] |= bit(a);
  next.rows.assign(na, 0);
  for (int a = 0; a < na; ++a) {
    for (Mask t = prev.rows[a]; t; t &= t - 1) {
      const int b = lowest_bit(t);
      bool ok = true;
      for (Mask va = fa.up(a); ok && va; va &= va - 1)
        if ((prev.rows[lowest_bit(va)] & fb.up(b)) == 0) ok = false;
      for (Mask vb = fb.up(b); ok && vb; vb &= vb - 1)
        if ((col[lowest_bit(vb)] & fa.up(a)) == 0) ok = false;
      if (ok) next.rows[a] |= bit(b);
    }
  }
}

Relation refine_raw(const Poset& fa, const Poset& fb, const Relation& prev) {
  Relation next;
  refine_raw_into(fa, fb, prev, next);
  return next;
}

Relation gfp_raw(const Poset& fa, const std::vector<Color>& ca, const Poset& fb,
                 const std::vector<Color>& cb) {
  Relation cur = color_equality_raw(fa, ca, fb, cb);
  Relation next;
  while (true) {
    refine_raw_into(fa, fb, cur, next);
    if (next == cur) return cur;
    std::swap(cur, next);
  }
}

}  // namespace

Relation color_equality(const Model& m, const Model& n) {
  return color_equality_raw(m.frame, m.color, n.frame, n.color);
}

Relation refine_step(const Model& m, const Model& n, const Relation& prev) {
  return refine_raw(m.frame, n.frame, prev);
}

bool is_reduced_labeled(const Poset& f, const std::vector<Color>& labels) {
  thread_local Relation cur, next;
  const int n = f.size();
  cur.rows.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (labels[a] == labels[b]) cur.rows[a] |= bit(b);
  while (true) {
    // a non-identity row can only shrink to the identity, never below it
    bool identity = true;
    for (int i = 0; i < n && identity; ++i) identity = cur.rows[i] == bit(i);
    if (identity) return true;
    refine_raw_into(f, f, cur, next);
    if (next == cur) return false;
    std::swap(cur, next);
  }
}

BisimLevel max_bisim_level_labeled(const Poset& fa, const std::vector<Color>& ca, int root_a,
                                   const Poset& fb, const std::vector<Color>& cb, int root_b,
                                   int cutoff) {
  if (cutoff < 0) cutoff = fa.size() * fb.size() + 1;
  thread_local Relation cur, next;
  const int na = fa.size(), nb = fb.size();
  cur.rows.assign(na, 0);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      if (ca[a] == cb[b]) cur.rows[a] |= bit(b);
  if (!cur.contains(root_a, root_b)) return BisimLevel::none();
  int level = 0;
  for (int j = 1; j <= cutoff; ++j) {
    refine_raw_into(fa, fb, cur, next);
    if (next == cur) return BisimLevel::full();
    if (!next.contains(root_a, root_b)) return BisimLevel::finite(level);
    std::swap(cur, next);
    level = j;
  }
  return BisimLevel::finite(level);
}

LayeredBisim layered_bisim(const Model& m, const Model& n, int k) {
  check_vars(m, n);
  LayeredBisim lb;
  lb.levels.push_back(color_equality(m, n));
  for (int j = 1; j <= k; ++j) lb.levels.push_back(refine_step(m, n, lb.levels.back()));
  return lb;
}

Relation greatest_bisimulation(const Model& m, const Model& n) {
  check_vars(m, n);
  return gfp_raw(m.frame, m.color, n.frame, n.color);
}

std::optional<Relation> full_bisim(const Model& m, const Model& n) {
  Relation g = greatest_bisimulation(m, n);
  if (!g.contains(m.root(), n.root())) return std::nullopt;
  return g;
}

bool are_bisimilar(const Model& m, const Model& n) { return full_bisim(m, n).has_value(); }

std::optional<LayeredBisim> k_bisim(const Model& m, const Model& n, int k) {
  LayeredBisim lb = layered_bisim(m, n, k);
  if (!lb.top().contains(m.root(), n.root())) return std::nullopt;
  return lb;
}

bool are_k_bisimilar(const Model& m, const Model& n, int k) {
  return k_bisim(m, n, k).has_value();
}

bool leq_k(const Model& m, const Model& n, int k) {
  LayeredBisim lb = layered_bisim(m, n, k);
  for (Mask t = m.frame.up(m.root()); t; t &= t - 1)
    if (lb.top().contains(lowest_bit(t), n.root())) return true;
  return false;
}

BisimLevel max_bisim_level(const Model& m, const Model& n, int cutoff) {
  check_vars(m, n);
  return max_bisim_level_labeled(m.frame, m.color, m.root(), n.frame, n.color, n.root(),
                                 cutoff);
}

// ---------------------------------------------------------------- games

GameTranscript play_game(const Model& m, const Model& n, int k, const StrategyI& si,
                         const StrategyII& sii) {
  check_vars(m, n);
  GameTranscript t;
  int x = m.root(), y = n.root();
  if (m.color[x] != n.color[y]) {
    t.winner = 1;
    return t;
  }
  for (int round = 0; round < k; ++round) {
    auto [side, point] = si(x, y, k - round);
    const Poset& pf = side == 0 ? m.frame : n.frame;
    const int cur = side == 0 ? x : y;
    if (!pf.leq(cur, point)) throw std::invalid_argument("illegal move by player I");
    t.moves.push_back({1, side, point});
    int reply = sii(x, y, side, point, k - round);
    const Poset& qf = side == 0 ? n.frame : m.frame;
    const int other = side == 0 ? y : x;
    if (reply < 0) {  // player II resigns
      t.winner = 1;
      return t;
    }
    if (!qf.leq(other, reply)) throw std::invalid_argument("illegal move by player II");
    t.moves.push_back({2, 1 - side, reply});
    x = side == 0 ? point : reply;
    y = side == 0 ? reply : point;
    if (m.color[x] != n.color[y]) {
      t.winner = 1;
      return t;
    }
  }
  t.winner = 2;
  return t;
}

StrategyI optimal_strategy_I(const Model& m, const Model& n, int k) {
  auto lb = std::make_shared<LayeredBisim>(layered_bisim(m, n, k));
  auto mp = std::make_shared<Model>(m);
  auto np = std::make_shared<Model>(n);
  return [lb, mp, np](int x, int y, int rounds_left) -> std::pair<int, int> {
    // attack the lowest failing layer: at a pair outside level j, some move
    // on one side admits no reply inside level j-1
    const int r = std::min<int>(rounds_left, static_cast<int>(lb->levels.size()) - 1);
    for (int j = 1; j <= r; ++j) {
      if (lb->levels[j].contains(x, y)) continue;
      const Relation& prev = lb->levels[j - 1];
      for (Mask t = mp->frame.up(x); t; t &= t - 1) {
        const int v = lowest_bit(t);
        if ((prev.rows[v] & np->frame.up(y)) == 0) return {0, v};
      }
      for (Mask t = np->frame.up(y); t; t &= t - 1) {
        const int v = lowest_bit(t);
        bool reply = false;
        for (Mask s = mp->frame.up(x); s && !reply; s &= s - 1)
          if (prev.contains(lowest_bit(s), v)) reply = true;
        if (!reply) return {1, v};
      }
      break;  // pair is in level j after all relative to the layer chain
    }
    // no winning move; stall with the current point
    return {0, x};
  };
}

StrategyII optimal_strategy_II(const Model& m, const Model& n, int k) {
  auto lb = std::make_shared<LayeredBisim>(layered_bisim(m, n, k));
  auto mp = std::make_shared<Model>(m);
  auto np = std::make_shared<Model>(n);
  return [lb, mp, np](int x, int y, int side, int point, int rounds_left) -> int {
    const int r = std::min<int>(rounds_left, static_cast<int>(lb->levels.size()) - 1);
    const Relation& prev = lb->levels[r - 1];
    if (side == 0) {
      for (Mask t = np->frame.up(y); t; t &= t - 1)
        if (prev.contains(point, lowest_bit(t))) return lowest_bit(t);
      // no reply inside the layer; keep colors equal if possible
      for (Mask t = np->frame.up(y); t; t &= t - 1)
        if (np->color[lowest_bit(t)] == mp->color[point]) return lowest_bit(t);
      return -1;
    }
    for (Mask t = mp->frame.up(x); t; t &= t - 1)
      if (prev.contains(lowest_bit(t), point)) return lowest_bit(t);
    for (Mask t = mp->frame.up(x); t; t &= t - 1)
      if (mp->color[lowest_bit(t)] == np->color[point]) return lowest_bit(t);
    return -1;
  };
}

// ------------------------------------------------- distinguishing formulas

namespace {

struct PairSem {
  Mask in_m, in_n;
  friend auto operator<=>(const PairSem&, const PairSem&) = default;
};

}  // namespace

std::optional<FormulaPtr> distinguishing_formula(const Model& m, const Model& n, int k,
                                                 std::size_t budget) {
  check_vars(m, n);
  const int rm = m.root(), rn = n.root();
  auto success = [&](const PairSem& s) {
    return ((s.in_n >> rn) & 1) && !((s.in_m >> rm) & 1);
  };

  std::vector<std::pair<PairSem, FormulaPtr>> states;
  std::map<PairSem, std::size_t> index;
  auto add = [&](PairSem s, FormulaPtr f) -> std::optional<FormulaPtr> {
    if (index.count(s)) return std::nullopt;
    if (states.size() >= budget) throw CapExceeded("formula search budget exceeded");
    index[s] = states.size();
    states.emplace_back(s, std::move(f));
    if (success(s)) return states.back().second;
    return std::nullopt;
  };
  auto lattice_close = [&]() -> std::optional<FormulaPtr> {
    for (std::size_t grow = 1; grow;) {
      grow = 0;
      const std::size_t sz = states.size();
      for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = i + 1; j < sz; ++j) {
          const auto [si, fi] = states[i];
          const auto [sj, fj] = states[j];
          if (auto r = add({si.in_m & sj.in_m, si.in_n & sj.in_n}, fand(fi, fj))) return r;
          if (auto r = add({si.in_m | sj.in_m, si.in_n | sj.in_n}, f_or(fi, fj))) return r;
          grow = states.size() - sz;
        }
    }
    return std::nullopt;
  };

  if (auto r = add({0, 0}, fbot())) return r;
  if (auto r = add({m.frame.all(), n.frame.all()}, ftop())) return r;
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    Mask im = 0, in = 0;
    for (int w = 0; w < m.frame.size(); ++w)
      if (m.color[w] & (Color{1} << j)) im |= bit(w);
    for (int w = 0; w < n.frame.size(); ++w)
      if (n.color[w] & (Color{1} << j)) in |= bit(w);
    if (auto r = add({im, in}, fvar(m.vars[j]))) return r;
  }
  if (auto r = lattice_close()) return r;

  for (int depth = 1; depth <= k; ++depth) {
    const std::size_t sz = states.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) {
        const auto [si, fi] = states[i];
        const auto [sj, fj] = states[j];
        PairSem s{heyting_implies(m.frame, si.in_m, sj.in_m),
                  heyting_implies(n.frame, si.in_n, sj.in_n)};
        if (auto r = add(s, fimp(fi, fj))) return r;
      }
    if (auto r = lattice_close()) return r;
    if (states.size() == sz) break;  // stabilized early
  }
  return std::nullopt;
}

}  // namespace ultab
