#include "teamcheck/prop.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "teamcheck/error.hpp"

namespace tc {

std::string_view polarity_name(Polarity polarity) {
  switch (polarity) {
    case Polarity::kPositive: return "positive";
    case Polarity::kNegative: return "negative";
    case Polarity::kMixed: return "mixed";
  }
  return "?";
}

PropFormula PropFormula::literal(unsigned var, bool positive) {
  PropFormula f;
  f.kind_ = Kind::kLiteral;
  f.var_ = var;
  f.positive_ = positive;
  return f;
}

PropFormula PropFormula::conj(std::vector<PropFormula> children) {
  if (children.empty()) throw InputError("empty conjunction");
  PropFormula f;
  f.kind_ = Kind::kAnd;
  f.children_ = std::move(children);
  return f;
}

PropFormula PropFormula::disj(std::vector<PropFormula> children) {
  if (children.empty()) throw InputError("empty disjunction");
  PropFormula f;
  f.kind_ = Kind::kOr;
  f.children_ = std::move(children);
  return f;
}

namespace {

void gather(const PropFormula& f, std::set<unsigned>& vars, bool& pos, bool& neg) {
  if (f.is_literal()) {
    vars.insert(f.variable());
    (f.positive() ? pos : neg) = true;
    return;
  }
  for (const auto& c : f.children()) gather(c, vars, pos, neg);
}

}  // namespace

std::vector<unsigned> PropFormula::variables() const {
  std::set<unsigned> vars;
  bool pos = false, neg = false;
  gather(*this, vars, pos, neg);
  return {vars.begin(), vars.end()};
}

Polarity PropFormula::polarity() const {
  std::set<unsigned> vars;
  bool pos = false, neg = false;
  gather(*this, vars, pos, neg);
  if (pos && neg) return Polarity::kMixed;
  return neg ? Polarity::kNegative : Polarity::kPositive;
}

bool PropFormula::evaluate(const std::set<unsigned>& true_vars) const {
  switch (kind_) {
    case Kind::kLiteral:
      return true_vars.contains(var_) == positive_;
    case Kind::kAnd:
      return std::all_of(children_.begin(), children_.end(),
                         [&](const PropFormula& c) { return c.evaluate(true_vars); });
    case Kind::kOr:
      return std::any_of(children_.begin(), children_.end(),
                         [&](const PropFormula& c) { return c.evaluate(true_vars); });
  }
  return false;
}

PropFormula PropFormula::collapsed() const {
  if (is_literal()) return *this;
  if (children_.size() == 1) return children_[0].collapsed();
  std::vector<PropFormula> kids;
  for (const auto& c : children_) {
    auto cc = c.collapsed();
    if (cc.kind_ == kind_) {
      for (auto& g : cc.children_) kids.push_back(std::move(g));
    } else {
      kids.push_back(std::move(cc));
    }
  }
  PropFormula f;
  f.kind_ = kind_;
  f.children_ = std::move(kids);
  return f;
}

namespace {

class PropParser {
 public:
  explicit PropParser(std::string_view text) : text_(text) {}

  PropFormula parse() {
    auto f = disjunction();
    skip();
    if (i_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  void skip() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < text_.size() && text_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < i_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(message, line, col);
  }

  PropFormula disjunction() {
    std::vector<PropFormula> parts{conjunction()};
    while (accept('|')) parts.push_back(conjunction());
    return parts.size() == 1 ? parts[0] : PropFormula::disj(std::move(parts));
  }

  PropFormula conjunction() {
    std::vector<PropFormula> parts{primary()};
    while (accept('&')) parts.push_back(primary());
    return parts.size() == 1 ? parts[0] : PropFormula::conj(std::move(parts));
  }

  PropFormula primary() {
    if (accept('(')) {
      auto f = disjunction();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    bool positive = !accept('!');
    skip();
    if (i_ >= text_.size() || text_[i_] != 'x') fail("expected a variable x<id>");
    ++i_;
    std::size_t start = i_;
    unsigned long value = 0;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      value = value * 10 + static_cast<unsigned long>(text_[i_] - '0');
      if (value > std::numeric_limits<unsigned>::max()) fail("variable id too large");
      ++i_;
    }
    if (i_ == start) fail("expected digits after 'x'");
    return PropFormula::literal(static_cast<unsigned>(value), positive);
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

std::string render_at(const PropFormula& f, bool parenthesise_or) {
  auto s = render(f);
  bool needs = !f.is_literal() && f.children().size() > 1 &&
               (f.kind() == PropFormula::Kind::kOr ? parenthesise_or : false);
  return needs ? "(" + s + ")" : s;
}

constexpr std::size_t kNoFit = std::numeric_limits<std::size_t>::max();

// Least d with f ∈ Γ_{t,d} (conjunctive = true) or Δ_{t,d}. Non-matching
// nodes are read as a single-child layer of the required kind.
std::size_t fit(const PropFormula& f, bool conjunctive, std::size_t t) {
  auto own = conjunctive ? PropFormula::Kind::kAnd : PropFormula::Kind::kOr;
  if (t == 0) {
    if (f.is_literal()) return 1;
    if (f.kind() != own) return kNoFit;
    for (const auto& c : f.children())
      if (!c.is_literal()) return kNoFit;
    return f.children().size();
  }
  if (f.kind() != own) return fit(f, !conjunctive, t - 1);
  std::size_t d = 1;
  for (const auto& c : f.children()) {
    auto cd = fit(c, !conjunctive, t - 1);
    if (cd == kNoFit) return kNoFit;
    d = std::max(d, cd);
  }
  return d;
}

PropFormula pad(const PropFormula& f, bool conjunctive, std::size_t t) {
  if (t == 0) {
    if (!f.is_literal()) throw InputError("formula is not in the requested Gamma class with d = 1");
    return f;
  }
  auto own = conjunctive ? PropFormula::Kind::kAnd : PropFormula::Kind::kOr;
  std::vector<PropFormula> kids;
  if (f.kind() == own) {
    for (const auto& c : f.children()) kids.push_back(pad(c, !conjunctive, t - 1));
  } else {
    kids.push_back(pad(f, !conjunctive, t - 1));
  }
  return conjunctive ? PropFormula::conj(std::move(kids)) : PropFormula::disj(std::move(kids));
}

}  // namespace

PropFormula parse_prop(std::string_view text) { return PropParser(text).parse(); }

std::string render(const PropFormula& f) {
  if (f.is_literal()) return (f.positive() ? "x" : "!x") + std::to_string(f.variable());
  if (f.children().size() == 1) return render(f.children()[0]);
  bool is_and = f.kind() == PropFormula::Kind::kAnd;
  std::string out;
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    if (i) out += is_and ? " & " : " | ";
    const auto& c = f.children()[i];
    // Inside a conjunction, disjunctions need parentheses; inside a
    // disjunction, conjunctions bind tighter already.
    out += is_and ? render_at(c, true) : render(c);
  }
  return out;
}

std::optional<std::size_t> min_fan_in(const PropFormula& formula, std::size_t depth) {
  auto d = fit(formula.collapsed(), true, depth);
  if (d == kNoFit) return std::nullopt;
  return d;
}

std::optional<GammaClass> gamma_class(const PropFormula& formula) {
  auto f = formula.collapsed();
  // A collapsed tree of height h always fits at t = h + 1.
  std::size_t height = 0;
  auto measure = [&](auto&& self, const PropFormula& g, std::size_t level) -> void {
    height = std::max(height, level);
    for (const auto& c : g.children()) self(self, c, level + 1);
  };
  measure(measure, f, 0);
  for (std::size_t t = 1; t <= height + 1; ++t) {
    auto d = fit(f, true, t);
    if (d != kNoFit) return GammaClass{t, d, f.polarity()};
  }
  return std::nullopt;
}

PropFormula layered(const PropFormula& formula, std::size_t depth) {
  auto f = formula.collapsed();
  auto d = fit(f, true, depth);
  if (d != 1)
    throw InputError("formula is not in Gamma_{" + std::to_string(depth) + ",1}");
  return pad(f, true, depth);
}

}  // namespace tc
