#include "ultab/formula.hpp"

#include <algorithm>
#include <cctype>

namespace ultab {

namespace {
FormulaPtr node(Formula::Kind k, std::string v, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->var = std::move(v);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
}  // namespace

FormulaPtr fvar(std::string name) { return node(Formula::Kind::Var, std::move(name), nullptr, nullptr); }
FormulaPtr fbot() {
  static const FormulaPtr b = node(Formula::Kind::Bot, "", nullptr, nullptr);
  return b;
}
FormulaPtr ftop() {
  static const FormulaPtr t = node(Formula::Kind::Top, "", nullptr, nullptr);
  return t;
}
FormulaPtr fand(FormulaPtr a, FormulaPtr b) { return node(Formula::Kind::And, "", std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return node(Formula::Kind::Or, "", std::move(a), std::move(b)); }
FormulaPtr fimp(FormulaPtr a, FormulaPtr b) { return node(Formula::Kind::Imp, "", std::move(a), std::move(b)); }
FormulaPtr fneg(FormulaPtr a) { return fimp(std::move(a), fbot()); }
FormulaPtr fiff(FormulaPtr a, FormulaPtr b) { return fand(fimp(a, b), fimp(b, a)); }

FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return ftop();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = fand(acc, fs[i]);
  return acc;
}

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return fbot();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

bool struct_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Var: return a->var == b->var;
    case Formula::Kind::Bot:
    case Formula::Kind::Top: return true;
    default:
      return struct_equal(a->lhs, b->lhs) && struct_equal(a->rhs, b->rhs);
  }
}

int impl_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Var:
    case Formula::Kind::Bot:
    case Formula::Kind::Top: return 0;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return std::max(impl_depth(f->lhs), impl_depth(f->rhs));
    case Formula::Kind::Imp:
      return std::max(impl_depth(f->lhs), impl_depth(f->rhs)) + 1;
  }
  return 0;
}

namespace {
void collect_vars(const FormulaPtr& f, std::vector<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Var:
      if (std::find(out.begin(), out.end(), f->var) == out.end()) out.push_back(f->var);
      return;
    case Formula::Kind::Bot:
    case Formula::Kind::Top: return;
    default:
      collect_vars(f->lhs, out);
      collect_vars(f->rhs, out);
  }
}
}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  bool try_eat(std::string_view tok) {
    skip_ws();
    if (text.substr(pos, tok.size()) != tok) return false;
    // don't split an identifier or a longer arrow
    if (tok == "->" && pos >= 1 && text[pos - 1] == '<') return false;
    pos += tok.size();
    return true;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError("expected a formula", pos);
    return std::string(text.substr(start, pos - start));
  }
};

struct Parser {
  Lexer lx;

  FormulaPtr parse_iff() {
    FormulaPtr left = parse_imp();
    while (lx.try_eat("<->")) left = fiff(left, parse_imp());
    return left;
  }
  FormulaPtr parse_imp() {
    FormulaPtr left = parse_or();
    lx.skip_ws();
    if (lx.text.substr(lx.pos, 3) == "<->") return left;
    if (lx.try_eat("->")) return fimp(left, parse_imp());  // right associative
    return left;
  }
  FormulaPtr parse_or() {
    FormulaPtr left = parse_and();
    while (lx.try_eat("|")) left = f_or(left, parse_and());
    return left;
  }
  FormulaPtr parse_and() {
    FormulaPtr left = parse_unary();
    while (lx.try_eat("&")) left = fand(left, parse_unary());
    return left;
  }
  FormulaPtr parse_unary() {
    if (lx.try_eat("~")) return fneg(parse_unary());
    return parse_atom();
  }
  FormulaPtr parse_atom() {
    if (lx.try_eat("(")) {
      FormulaPtr f = parse_iff();
      if (!lx.try_eat(")")) throw ParseError("expected ')'", lx.pos);
      return f;
    }
    if (lx.eof()) throw ParseError("unexpected end of input", lx.pos);
    const char c = lx.peek();
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw ParseError(std::string("unexpected character '") + c + "'", lx.pos);
    std::string id = lx.ident();
    if (id == "bot") return fbot();
    if (id == "top") return ftop();
    return fvar(std::move(id));
  }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p{Lexer{text}};
  FormulaPtr f = p.parse_iff();
  if (!p.lx.eof()) throw ParseError("trailing input", p.lx.pos);
  return f;
}

namespace {

// precedence levels used by the printer: imp 1, or 2, and 3, atom 4
int level(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Imp: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

void print_rec(const FormulaPtr& f, int min_level, std::string& out) {
  const bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f->kind) {
    case Formula::Kind::Var: out += f->var; break;
    case Formula::Kind::Bot: out += "bot"; break;
    case Formula::Kind::Top: out += "top"; break;
    case Formula::Kind::Imp:
      print_rec(f->lhs, 2, out);  // -> is right associative
      out += " -> ";
      print_rec(f->rhs, 1, out);
      break;
    case Formula::Kind::Or:
      print_rec(f->lhs, 2, out);
      out += " | ";
      print_rec(f->rhs, 3, out);
      break;
    case Formula::Kind::And:
      print_rec(f->lhs, 3, out);
      out += " & ";
      print_rec(f->rhs, 4, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

FormulaPtr bounded_depth_axiom(int n) {
  if (n < 0) throw std::invalid_argument("bd index must be >= 0");
  FormulaPtr acc = fvar("p0");
  for (int i = 1; i <= n; ++i) {
    FormulaPtr pi = fvar("p" + std::to_string(i));
    acc = f_or(pi, fimp(pi, acc));
  }
  return acc;
}

JankovFormula jankov_syntactic(const Poset& q, std::size_t cap) {
  const int root = q.root_or_throw();
  JankovFormula out;
  out.upsets = all_upsets(q, cap);
  const int m = static_cast<int>(out.upsets.size());
  std::vector<FormulaPtr> vars(m);
  auto index_of = [&](Mask u) {
    return static_cast<int>(std::lower_bound(out.upsets.begin(), out.upsets.end(), u,
                                             [](Mask a, Mask b) {
                                               return std::make_pair(popcount(a), a) <
                                                      std::make_pair(popcount(b), b);
                                             }) -
                            out.upsets.begin());
  };
  for (int i = 0; i < m; ++i) {
    out.var_names.push_back("u" + std::to_string(i));
    vars[i] = fvar(out.var_names.back());
  }
  std::vector<FormulaPtr> diagram;
  diagram.push_back(fiff(vars[index_of(0)], fbot()));
  diagram.push_back(fiff(vars[index_of(q.all())], ftop()));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Mask a = out.upsets[i], b = out.upsets[j];
      Mask imp = 0;
      for (int x = 0; x < q.size(); ++x)
        if ((q.up(x) & a & ~b) == 0) imp |= bit(x);
      if (j >= i) {
        diagram.push_back(fiff(vars[index_of(a & b)], fand(vars[i], vars[j])));
        diagram.push_back(fiff(vars[index_of(a | b)], f_or(vars[i], vars[j])));
      }
      diagram.push_back(fiff(vars[index_of(imp)], fimp(vars[i], vars[j])));
    }
  out.conclusion_var = index_of(q.all() & ~bit(root));
  out.formula = fimp(big_and(diagram), vars[out.conclusion_var]);
  return out;
}

}  // namespace ultab
