#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tc {

enum class Polarity { kPositive, kNegative, kMixed };

std::string_view polarity_name(Polarity polarity);

// Propositional formula as an and/or tree over literals x<id> / !x<id>.
// Nodes may have a single child; such unary layers are how a formula is
// padded to an exact alternation depth.
class PropFormula {
 public:
  enum class Kind { kAnd, kOr, kLiteral };

  static PropFormula literal(unsigned var, bool positive = true);
  static PropFormula conj(std::vector<PropFormula> children);
  static PropFormula disj(std::vector<PropFormula> children);

  Kind kind() const { return kind_; }
  bool is_literal() const { return kind_ == Kind::kLiteral; }
  unsigned variable() const { return var_; }
  bool positive() const { return positive_; }
  const std::vector<PropFormula>& children() const { return children_; }

  // Distinct variables, ascending.
  std::vector<unsigned> variables() const;
  std::size_t var_count() const { return variables().size(); }
  Polarity polarity() const;
  bool evaluate(const std::set<unsigned>& true_vars) const;

  // Single-child layers removed and nested like connectives merged.
  PropFormula collapsed() const;

  friend bool operator==(const PropFormula&, const PropFormula&) = default;

 private:
  Kind kind_ = Kind::kLiteral;
  unsigned var_ = 0;
  bool positive_ = true;
  std::vector<PropFormula> children_;
};

// Grammar: '|' binds weaker than '&'; literals x<id> or !x<id>; parentheses.
PropFormula parse_prop(std::string_view text);
std::string render(const PropFormula& formula);

struct GammaClass {
  std::size_t depth = 0;    // t
  std::size_t fan_in = 0;   // d
  Polarity polarity = Polarity::kPositive;

  friend bool operator==(const GammaClass&, const GammaClass&) = default;
};

// Least d with formula ∈ Γ_{depth,d} after collapsing, if any.
std::optional<std::size_t> min_fan_in(const PropFormula& formula, std::size_t depth);

// Least t >= 1, then least d for that t, with formula ∈ Γ_{t,d}.
std::optional<GammaClass> gamma_class(const PropFormula& formula);

// Rewrites a formula of Γ_{depth,1} so that every leaf sits exactly `depth`
// alternating layers below the root (an and-layer on top), inserting unary
// layers where needed. Throws InputError when the formula is not in
// Γ_{depth,1}.
PropFormula layered(const PropFormula& formula, std::size_t depth);

}  // namespace tc
