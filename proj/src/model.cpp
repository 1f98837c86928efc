#include "ultab/model.hpp"

#include <algorithm>

#include "ultab/bisim.hpp"

namespace ultab {

Model::Model(Poset f, std::vector<std::string> v, std::vector<Color> c)
    : frame(std::move(f)), vars(std::move(v)), color(std::move(c)) {
  frame.root_or_throw();
  if (static_cast<int>(color.size()) != frame.size())
    throw std::invalid_argument("color/world count mismatch");
  if (vars.size() > 31) throw std::invalid_argument("too many variables");
  const Color used = vars.empty() ? 0 : (Color{1} << vars.size()) - 1;
  for (int w = 0; w < frame.size(); ++w) {
    if (color[w] & ~used) throw std::invalid_argument("color uses unknown variable");
    for (Mask m = frame.strict_up(w); m; m &= m - 1)
      if (color[w] & ~color[lowest_bit(m)])
        throw std::invalid_argument("coloring is not order-preserving");
  }
}

Mask heyting_implies(const Poset& p, Mask u, Mask v) {
  if ((u | v) & ~p.all()) throw std::invalid_argument("upset of a different poset");
  Mask out = 0;
  for (int x = 0; x < p.size(); ++x)
    if ((p.up(x) & u & ~v) == 0) out |= bit(x);
  return out;
}

namespace {

Mask eval_rec(const Poset& p, const FormulaPtr& f,
              const std::vector<std::pair<const std::string*, Mask>>& env) {
  switch (f->kind) {
    case Formula::Kind::Bot: return 0;
    case Formula::Kind::Top: return p.all();
    case Formula::Kind::Var:
      for (const auto& [name, mask] : env)
        if (*name == f->var) return mask;
      throw std::invalid_argument("unbound variable " + f->var);
    case Formula::Kind::And:
      return eval_rec(p, f->lhs, env) & eval_rec(p, f->rhs, env);
    case Formula::Kind::Or:
      return eval_rec(p, f->lhs, env) | eval_rec(p, f->rhs, env);
    case Formula::Kind::Imp:
      return heyting_implies(p, eval_rec(p, f->lhs, env), eval_rec(p, f->rhs, env));
  }
  return 0;
}

}  // namespace

Mask eval(const Model& m, const FormulaPtr& f) {
  std::vector<std::pair<const std::string*, Mask>> env;
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    Mask mask = 0;
    for (int w = 0; w < m.frame.size(); ++w)
      if (m.color[w] & (Color{1} << j)) mask |= bit(w);
    env.emplace_back(&m.vars[j], mask);
  }
  return eval_rec(m.frame, f, env);
}

bool satisfies(const Model& m, const FormulaPtr& f) {
  return (eval(m, f) >> m.root()) & 1;
}

Mask eval_with(const Poset& p, const Valuation& v, const FormulaPtr& f) {
  std::vector<std::pair<const std::string*, Mask>> env;
  for (const auto& [name, mask] : v) {
    if (!p.is_upset(mask)) throw std::invalid_argument("valuation image is not an upset");
    env.emplace_back(&name, mask);
  }
  return eval_rec(p, f, env);
}

ValidityResult frame_validates(const Poset& p, const FormulaPtr& f, std::size_t cap) {
  const auto vars = free_vars(f);
  const auto upsets = all_upsets(p);
  double total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<double>(upsets.size());
  if (total > static_cast<double>(cap)) throw CapExceeded("valuation cap exceeded");

  std::vector<std::pair<const std::string*, Mask>> env;
  for (const auto& v : vars) env.emplace_back(&v, 0);
  const Mask want = p.all();
  std::vector<std::size_t> pick(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[i].second = upsets[pick[i]];
    if (eval_rec(p, f, env) != want) {
      ValidityResult r{false, {}};
      for (std::size_t i = 0; i < vars.size(); ++i) r.countervaluation[vars[i]] = env[i].second;
      return r;
    }
    std::size_t i = vars.size();
    while (i > 0 && ++pick[i - 1] == upsets.size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return ValidityResult{true, {}};
}

bool is_reduced(const Model& m) {
  const Relation auto_bisim = greatest_bisimulation(m, m);
  for (int i = 0; i < m.frame.size(); ++i)
    if (auto_bisim.rows[i] != bit(i)) return false;
  return true;
}

Model reduce(const Model& m) {
  const Relation r = greatest_bisimulation(m, m);
  const int n = m.frame.size();
  // the greatest auto-bisimulation is an equivalence; classes keep the
  // lexicographically least member name
  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(reps.size());
    for (Mask t = r.rows[i]; t; t &= t - 1) cls[lowest_bit(t)] = cls[i];
    int rep = i;
    for (Mask t = r.rows[i]; t; t &= t - 1) {
      int j = lowest_bit(t);
      if (m.frame.name(j) < m.frame.name(rep)) rep = j;
    }
    reps.push_back(rep);
  }
  const int k = static_cast<int>(reps.size());
  std::vector<Mask> up(k, 0);
  for (int i = 0; i < n; ++i)
    for (Mask t = m.frame.up(i); t; t &= t - 1) up[cls[i]] |= bit(cls[lowest_bit(t)]);
  std::vector<std::string> names;
  std::vector<Color> color;
  for (int c = 0; c < k; ++c) {
    names.push_back(m.frame.name(reps[c]));
    color.push_back(m.color[reps[c]]);
  }
  Poset q = Poset::from_leq(std::move(names), std::move(up), cls[m.root()]);
  return Model(std::move(q), m.vars, std::move(color));
}

std::vector<Model> all_models(const Poset& frame, std::vector<std::string> vars,
                              std::size_t cap) {
  if (!frame.rooted()) throw std::invalid_argument("models need a rooted frame");
  const Color full = vars.empty() ? 0 : (Color{1} << vars.size()) - 1;
  // assign colors top-down: each world's color must sit below the meet of
  // its covers' colors
  std::vector<int> order(frame.size());
  for (int i = 0; i < frame.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(frame.up(a)) < popcount(frame.up(b));
  });
  std::vector<Model> out;
  std::vector<Color> color(frame.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == order.size()) {
      if (out.size() >= cap) throw CapExceeded("model enumeration cap exceeded");
      out.emplace_back(frame, vars, color);
      return;
    }
    const int w = order[idx];
    Color bound = full;
    for (Mask m = frame.covers_above(w); m; m &= m - 1) bound &= color[lowest_bit(m)];
    for (Color c = bound;; c = (c - 1) & bound) {
      color[w] = c;
      self(self, idx + 1);
      if (c == 0) break;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace ultab
