#include "teamcheck/formula.hpp"

#include <algorithm>

#include "teamcheck/error.hpp"

namespace tc {

bool Formula::is_literal() const {
  switch (op()) {
    case Op::kEq:
    case Op::kNeq:
    case Op::kRel:
    case Op::kNegRel:
      return true;
    default:
      return false;
  }
}

bool Formula::is_team_atom() const {
  return op() == Op::kDep || op() == Op::kInc || op() == Op::kIndep;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.first == y.first &&
         x.second == y.second && x.third == y.third && x.children == y.children;
}

Formula Formula::make(Node node) {
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula eq(Term a, Term b) {
  return Formula::make({Op::kEq, {}, {std::move(a), std::move(b)}, {}, {}, {}});
}

Formula neq(Term a, Term b) {
  return Formula::make({Op::kNeq, {}, {std::move(a), std::move(b)}, {}, {}, {}});
}

Formula rel(std::string name, Terms args) {
  if (args.empty()) throw InputError("relation atoms need at least one argument");
  return Formula::make({Op::kRel, std::move(name), std::move(args), {}, {}, {}});
}

Formula neg_rel(std::string name, Terms args) {
  if (args.empty()) throw InputError("relation atoms need at least one argument");
  return Formula::make({Op::kNegRel, std::move(name), std::move(args), {}, {}, {}});
}

Formula dep(Terms determining, Terms dependent) {
  return Formula::make({Op::kDep, {}, std::move(determining), std::move(dependent), {}, {}});
}

Formula inc(Terms included, Terms container) {
  if (included.size() != container.size())
    throw InputError("inclusion atom needs tuples of equal length");
  if (included.empty()) throw InputError("inclusion atom needs nonempty tuples");
  return Formula::make({Op::kInc, {}, std::move(included), std::move(container), {}, {}});
}

Formula indep(Terms condition, Terms left, Terms right) {
  return Formula::make(
      {Op::kIndep, {}, std::move(condition), std::move(left), std::move(right), {}});
}

Formula conj(Formula a, Formula b) {
  return Formula::make({Op::kAnd, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula disj(Formula a, Formula b) {
  return Formula::make({Op::kOr, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}

Formula exists(std::string var, Formula body) {
  return Formula::make({Op::kExists, std::move(var), {}, {}, {}, {std::move(body)}});
}

Formula forall(std::string var, Formula body) {
  return Formula::make({Op::kForall, std::move(var), {}, {}, {}, {std::move(body)}});
}

Formula conj(const std::vector<Formula>& parts) {
  if (parts.empty()) throw InputError("empty conjunction");
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

namespace {

void collect_vars(const Terms& terms, VarSet& out) {
  for (const auto& t : terms)
    if (t.is_variable()) out.insert(t.name);
}

}  // namespace

VarSet free_vars(const Formula& f) {
  VarSet out;
  if (f.is_literal() || f.is_team_atom()) {
    collect_vars(f.first(), out);
    collect_vars(f.second(), out);
    collect_vars(f.third(), out);
    return out;
  }
  if (f.is_quantifier()) {
    out = free_vars(f.body());
    out.erase(f.variable());
    return out;
  }
  out = free_vars(f.left());
  out.merge(free_vars(f.right()));
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  if (f.is_quantifier()) return 1 + quantifier_depth(f.body());
  if (f.is_connective())
    return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
  return 0;
}

std::size_t formula_size(const Formula& f) {
  if (f.is_quantifier()) return 1 + formula_size(f.body());
  if (f.is_connective()) return 1 + formula_size(f.left()) + formula_size(f.right());
  return 1;
}

std::string render(const Terms& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    out += terms[i].name;
  }
  return out;
}

namespace {

// Binding strength: 0 = '|', 1 = '&', 2 = unary.
int strength(const Formula& f) {
  if (f.op() == Op::kOr) return 0;
  if (f.op() == Op::kAnd) return 1;
  return 2;
}

std::string render_at(const Formula& f, int min_strength) {
  std::string s = render(f);
  return strength(f) < min_strength ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const Formula& f) {
  switch (f.op()) {
    case Op::kEq:
      return f.first()[0].name + "=" + f.first()[1].name;
    case Op::kNeq:
      return f.first()[0].name + "!=" + f.first()[1].name;
    case Op::kRel:
      return f.relation() + "(" + render(f.first()) + ")";
    case Op::kNegRel:
      return "!" + f.relation() + "(" + render(f.first()) + ")";
    case Op::kDep:
      return "dep(" + render(f.first()) + ";" + render(f.second()) + ")";
    case Op::kInc:
      return "inc(" + render(f.first()) + ";" + render(f.second()) + ")";
    case Op::kIndep:
      return "indep(" + render(f.first()) + ";" + render(f.second()) + ";" +
             render(f.third()) + ")";
    case Op::kAnd:
      // Left-associative: a right operand that is itself a conjunction needs
      // parentheses to survive a round trip.
      return render_at(f.left(), 1) + " & " + render_at(f.right(), 2);
    case Op::kOr:
      return render_at(f.left(), 0) + " | " + render_at(f.right(), 1);
    case Op::kExists:
      return "exists " + f.variable() + " " + render_at(f.body(), 2);
    case Op::kForall:
      return "forall " + f.variable() + " " + render_at(f.body(), 2);
  }
  return {};
}

}  // namespace tc
