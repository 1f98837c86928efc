#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ultab/poset.hpp"

namespace ultab {

// AST over variables, bot, top, and binary and/or/imp. Negation and
// equivalence are parser sugar: ~a = a -> bot, a <-> b = (a->b) & (b->a).
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Var, Bot, Top, And, Or, Imp };
  Kind kind;
  std::string var;  // Kind::Var only
  FormulaPtr lhs, rhs;
};

FormulaPtr fvar(std::string name);
FormulaPtr fbot();
FormulaPtr ftop();
FormulaPtr fand(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr fimp(FormulaPtr a, FormulaPtr b);
FormulaPtr fneg(FormulaPtr a);
FormulaPtr fiff(FormulaPtr a, FormulaPtr b);
FormulaPtr big_and(const std::vector<FormulaPtr>& fs);  // top when empty
FormulaPtr big_or(const std::vector<FormulaPtr>& fs);   // bot when empty

bool struct_equal(const FormulaPtr& a, const FormulaPtr& b);

// nesting depth of ->; d(p)=d(bot)=d(top)=0, and/or take the max,
// d(a->b) = max(d(a),d(b)) + 1
int impl_depth(const FormulaPtr& f);

// variables in order of first occurrence
std::vector<std::string> free_vars(const FormulaPtr& f);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

// Grammar (ASCII): iff `<->` < imp `->` (right assoc) < or `|` < and `&`
// < prefix `~` < atoms (identifiers, `bot`, `top`, parentheses).
FormulaPtr parse_formula(std::string_view text);
// prints the desugared AST with minimal parentheses; parse(print(f)) == f
std::string print_formula(const FormulaPtr& f);

// bd_0 = p0, bd_{n+1} = p{n+1} | (p{n+1} -> bd_n)
FormulaPtr bounded_depth_axiom(int n);

// Jankov formula of a rooted poset: one variable per upset of q, the
// diagram equivalences for meet/join/implication/bot/top, and the
// conclusion variable for the complement of the root.
struct JankovFormula {
  FormulaPtr formula;
  std::vector<Mask> upsets;       // upsets[i] is the upset of variable var_names[i]
  std::vector<std::string> var_names;
  int conclusion_var;             // index of the variable for q minus its root
};
JankovFormula jankov_syntactic(const Poset& q, std::size_t cap = 1u << 12);

// A named axiom, optionally backed by a frame-level semantic check that
// the morphism module can dispatch on instead of enumerating valuations.
struct SemanticJankov { Poset q; };
struct SemanticKC {};                // every principal upset has one maximal point
struct SemanticBW2 {};               // width at most 2
struct SemanticBD { int n; };        // depth at most n
using SemanticCheck =
    std::variant<SemanticJankov, SemanticKC, SemanticBW2, SemanticBD>;

struct Axiom {
  std::string label;
  FormulaPtr formula;
  std::optional<SemanticCheck> semantic;
};

struct AxiomSet {
  std::string name;
  std::vector<Axiom> axioms;
};

// LC, wPL, KC, BW2, BD<n>, 2Uni, LFC, Box
AxiomSet named_axiom(const std::string& name);

}  // namespace ultab
