#include "ultab/families.hpp"
#include "ultab/formula.hpp"

namespace ultab {

namespace {

Axiom plain(std::string label, const char* text) {
  return Axiom{std::move(label), parse_formula(text), std::nullopt};
}

Axiom jankov_axiom(int i) {
  Poset q = q_poset(i);
  Axiom ax{"J(Q" + std::to_string(i) + ")", jankov_syntactic(q).formula,
           SemanticJankov{q}};
  return ax;
}

std::vector<Axiom> wpl_axioms() {
  // the weak Peirce law, read as (q->p) | (((p->q)->p)->p); its finite
  // rooted frames must come out as exactly the Boolean sums
  return {plain("wPL", "(q->p) | (((p->q)->p)->p)")};
}

}  // namespace

AxiomSet named_axiom(const std::string& name) {
  if (name == "LC") return {"LC", {plain("LC", "(p->q) | (q->p)")}};
  if (name == "wPL") return {"wPL", wpl_axioms()};
  if (name == "KC")
    return {"KC", {Axiom{"KC", parse_formula("~p | ~~p"), SemanticKC{}}}};
  if (name == "BW2")
    return {"BW2",
            {Axiom{"BW2",
                   parse_formula("(p0 -> p1 | p2) | (p1 -> p0 | p2) | (p2 -> p0 | p1)"),
                   SemanticBW2{}}}};
  if (name.size() > 2 && name.rfind("BD", 0) == 0) {
    const int n = std::stoi(name.substr(2));
    return {name, {Axiom{name, bounded_depth_axiom(n), SemanticBD{n}}}};
  }
  if (name == "2Uni") {
    AxiomSet s{"2Uni", wpl_axioms()};
    s.axioms.push_back(jankov_axiom(4));
    s.axioms.push_back(jankov_axiom(5));
    return s;
  }
  if (name == "LFC") {
    AxiomSet s{"LFC", {}};
    for (int i : {2, 4, 5, 6, 7, 8}) s.axioms.push_back(jankov_axiom(i));
    return s;
  }
  if (name == "Box") {
    AxiomSet s{"Box", wpl_axioms()};
    s.axioms.push_back(named_axiom("BW2").axioms[0]);
    s.axioms.push_back(named_axiom("KC").axioms[0]);
    return s;
  }
  throw std::invalid_argument("unknown axiom set: " + name);
}

}  // namespace ultab
