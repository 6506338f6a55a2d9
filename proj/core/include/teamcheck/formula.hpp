#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "teamcheck/structure.hpp"
#include "teamcheck/team.hpp"

namespace tc {

struct Term {
  enum class Kind { kVariable, kConstant };

  Kind kind = Kind::kVariable;
  std::string name;

  static Term var(std::string name) { return {Kind::kVariable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::kConstant, std::move(name)}; }
  bool is_variable() const { return kind == Kind::kVariable; }

  friend bool operator==(const Term&, const Term&) = default;
};

using Terms = std::vector<Term>;

enum class Op {
  kEq,
  kNeq,
  kRel,
  kNegRel,
  kDep,    // dep(t; u): u is functionally determined by t
  kInc,    // inc(t; u): t-values appear among u-values
  kIndep,  // indep(c; a; b): a and b independent given c
  kAnd,
  kOr,
  kExists,
  kForall,
};

// Formula in negation normal form. Nodes are immutable and shared, so
// copies are cheap.
class Formula {
 public:
  Op op() const { return node_->op; }

  bool is_literal() const;     // =, !=, R, !R
  bool is_team_atom() const;   // dep, inc, indep
  bool is_quantifier() const { return op() == Op::kExists || op() == Op::kForall; }
  bool is_connective() const { return op() == Op::kAnd || op() == Op::kOr; }

  // kRel / kNegRel.
  const std::string& relation() const { return node_->name; }
  // Eq/Neq: the two sides. Rel: the arguments. Dep: determining tuple.
  // Inc: included tuple. Indep: conditioning tuple.
  const Terms& first() const { return node_->first; }
  // Dep: dependent tuple. Inc: containing tuple. Indep: left tuple.
  const Terms& second() const { return node_->second; }
  // Indep: right tuple.
  const Terms& third() const { return node_->third; }

  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }
  const Formula& body() const { return node_->children.at(0); }
  const std::string& variable() const { return node_->name; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    Terms first, second, third;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  friend Formula eq(Term, Term);
  friend Formula neq(Term, Term);
  friend Formula rel(std::string, Terms);
  friend Formula neg_rel(std::string, Terms);
  friend Formula dep(Terms, Terms);
  friend Formula inc(Terms, Terms);
  friend Formula indep(Terms, Terms, Terms);
  friend Formula conj(Formula, Formula);
  friend Formula disj(Formula, Formula);
  friend Formula exists(std::string, Formula);
  friend Formula forall(std::string, Formula);

  std::shared_ptr<const Node> node_;
};

Formula eq(Term a, Term b);
Formula neq(Term a, Term b);
Formula rel(std::string name, Terms args);
Formula neg_rel(std::string name, Terms args);
Formula dep(Terms determining, Terms dependent);
Formula inc(Terms included, Terms container);
Formula indep(Terms condition, Terms left, Terms right);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula exists(std::string var, Formula body);
Formula forall(std::string var, Formula body);

// Left-nested conjunction of a nonempty list.
Formula conj(const std::vector<Formula>& parts);

VarSet free_vars(const Formula& formula);
std::size_t quantifier_depth(const Formula& formula);
std::size_t formula_size(const Formula& formula);

// Concrete syntax; parse_formula(render(f)) == f.
std::string render(const Formula& formula);
std::string render(const Terms& terms);

// Grammar (precedence: quantifiers/atoms > & > |, both left-associative):
//   formula := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := ('exists'|'forall') VAR unary | '(' formula ')' | '!' REL '(' terms ')'
//            | 'dep' '(' terms? ';' terms ')' | 'inc' '(' terms ';' terms ')'
//            | 'indep' '(' terms? ';' terms ';' terms ')'
//            | REL '(' terms ')' | term '=' term | term '!=' term
// With a vocabulary, identifiers naming constants become constants and
// relation arities are checked.
Formula parse_formula(std::string_view text, const Vocabulary* vocabulary = nullptr);

}  // namespace tc
