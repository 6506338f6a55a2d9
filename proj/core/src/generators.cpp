#include "teamcheck/generators.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "teamcheck/error.hpp"

namespace tc {

Rng Rng::for_case(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  // FNV-1a over the tag, then splitmix64 to spread the bits.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h ^ (index * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("Rng::below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return v % bound;
}

std::size_t Rng::between(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(below(hi - lo + 1));
}

Structure random_structure(Rng& rng, std::size_t n, unsigned density) {
  TupleSet p, r;
  for (Element a = 0; a < n; ++a) {
    if (rng.chance(density)) p.insert({a});
    for (Element b = 0; b < n; ++b)
      if (rng.chance(density)) r.insert({a, b});
  }
  Element c = static_cast<Element>(rng.below(n));
  return Structure(Vocabulary({{"P", 1}, {"R", 2}}, {"c"}), n, {{"P", p}, {"R", r}}, {{"c", c}});
}

Team random_team(Rng& rng, std::size_t n, const std::vector<std::string>& vars,
                 std::size_t max_rows) {
  auto total = assignment_count(n, vars.size());
  std::size_t rows = rng.between(0, static_cast<std::size_t>(std::min<std::uint64_t>(max_rows, total)));
  std::set<std::uint64_t> picked;
  while (picked.size() < rows) picked.insert(rng.below(total));
  std::vector<Tuple> tuples;
  for (auto i : picked) tuples.push_back(assignment_tuple(n, vars.size(), i));
  return Team(vars, std::move(tuples));
}

namespace {

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const FormulaShape& shape) : rng_(rng), shape_(shape) {}

  Formula build() {
    std::vector<std::string> scope = shape_.sentence ? std::vector<std::string>{}
                                                     : shape_.free_vars;
    budget_ = shape_.max_size;
    if (shape_.sentence) {
      // Bind one or two variables up front so the body has something to use.
      std::size_t q = rng_.between(1, std::max<std::size_t>(1, shape_.max_quantifier_depth));
      return quantify(scope, q, shape_.max_quantifier_depth);
    }
    return node(scope, shape_.max_quantifier_depth);
  }

 private:
  Formula quantify(std::vector<std::string>& scope, std::size_t count, std::size_t depth) {
    std::string v = fresh(scope);
    scope.push_back(v);
    Formula body = count > 1 ? quantify(scope, count - 1, depth - 1) : node(scope, depth - 1);
    scope.pop_back();
    return rng_.chance(50) ? exists(v, body) : forall(v, body);
  }

  std::string fresh(const std::vector<std::string>& scope) {
    static const char* names[] = {"z", "w", "u", "v"};
    for (const char* n : names)
      if (std::find(scope.begin(), scope.end(), n) == scope.end()) return n;
    return "t" + std::to_string(scope.size());
  }

  Term term(const std::vector<std::string>& scope) {
    if (scope.empty() || rng_.chance(12)) return Term::constant("c");
    return Term::var(scope[rng_.below(scope.size())]);
  }

  Terms tuple(const std::vector<std::string>& scope, std::size_t len) {
    Terms out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(term(scope));
    return out;
  }

  Formula literal(const std::vector<std::string>& scope) {
    switch (rng_.below(6)) {
      case 0: return eq(term(scope), term(scope));
      case 1: return neq(term(scope), term(scope));
      case 2: return rel("P", {term(scope)});
      case 3: return neg_rel("P", {term(scope)});
      case 4: return rel("R", {term(scope), term(scope)});
      default: return neg_rel("R", {term(scope), term(scope)});
    }
  }

  Formula team_atom(const std::vector<std::string>& scope) {
    switch (shape_.fragment) {
      case Fragment::kDependence:
        return dep(tuple(scope, rng_.below(3)), tuple(scope, 1));
      case Fragment::kInclusion: {
        std::size_t len = rng_.chance(75) ? 1 : 2;
        return inc(tuple(scope, len), tuple(scope, len));
      }
      case Fragment::kIndependence:
        return indep(tuple(scope, rng_.below(2)), tuple(scope, 1), tuple(scope, 1));
      default:
        return literal(scope);
    }
  }

  Formula leaf(const std::vector<std::string>& scope) {
    if (shape_.fragment != Fragment::kFirstOrder && rng_.chance(45)) return team_atom(scope);
    return literal(scope);
  }

  Formula node(std::vector<std::string>& scope, std::size_t depth) {
    if (budget_ <= 1) {
      budget_ = 0;
      return leaf(scope);
    }
    --budget_;
    auto roll = rng_.below(100);
    if (roll < 30) return leaf(scope);
    if (roll < 55) return conj(node(scope, depth), node(scope, depth));
    if (roll < 78) return disj(node(scope, depth), node(scope, depth));
    if (depth == 0) return leaf(scope);
    // Mostly fresh variables; sometimes rebind one already in scope.
    std::string v = scope.empty() || rng_.chance(70) ? fresh(scope) : scope[rng_.below(scope.size())];
    bool added = std::find(scope.begin(), scope.end(), v) == scope.end();
    if (added) scope.push_back(v);
    Formula body = node(scope, depth - 1);
    if (added) scope.pop_back();
    return rng_.chance(50) ? exists(v, body) : forall(v, body);
  }

  Rng& rng_;
  const FormulaShape& shape_;
  std::size_t budget_ = 0;
};

}  // namespace

Formula random_formula(Rng& rng, const FormulaShape& shape) {
  if (shape.fragment == Fragment::kMixed) throw InputError("random formulas come from one fragment");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Formula f = FormulaGen(rng, shape).build();
    if (classify(f).fragment == shape.fragment) return f;
  }
  throw InputError("could not draw a formula of the requested fragment");
}

namespace {

PropFormula gamma_layer(Rng& rng, std::size_t depth, bool conjunctive, std::size_t vars,
                        bool positive, std::size_t max_fan_out) {
  if (depth == 0)
    return PropFormula::literal(static_cast<unsigned>(rng.between(1, vars)), positive);
  std::size_t fan = rng.between(1, max_fan_out);
  std::vector<PropFormula> kids;
  for (std::size_t i = 0; i < fan; ++i)
    kids.push_back(gamma_layer(rng, depth - 1, !conjunctive, vars, positive, max_fan_out));
  return conjunctive ? PropFormula::conj(std::move(kids)) : PropFormula::disj(std::move(kids));
}

}  // namespace

PropFormula random_gamma(Rng& rng, std::size_t t, std::size_t vars, Polarity polarity,
                         std::size_t max_fan_out) {
  if (t < 1 || vars < 1) throw InputError("random_gamma needs t >= 1 and at least one variable");
  if (polarity == Polarity::kMixed) throw InputError("random_gamma draws one polarity");
  return gamma_layer(rng, t, true, vars, polarity == Polarity::kPositive, max_fan_out);
}

BooleanCircuit random_circuit(Rng& rng, std::size_t max_gates) {
  if (max_gates == 0) throw InputError("random_circuit needs at least one gate");
  std::size_t m = rng.between(1, max_gates);
  std::vector<GateKind> kinds(m);
  std::set<BooleanCircuit::Edge> edges;
  kinds[0] = GateKind::kInput;
  for (std::size_t g = 1; g < m; ++g) {
    auto roll = rng.below(3);
    kinds[g] = roll == 0 ? GateKind::kInput : roll == 1 ? GateKind::kAnd : GateKind::kOr;
  }
  for (std::size_t g = 1; g < m; ++g) {
    if (kinds[g] == GateKind::kInput) continue;
    for (std::size_t c = 0; c < g; ++c)
      if (rng.chance(45)) edges.insert({c, g});
  }
  return BooleanCircuit(std::move(kinds), std::move(edges), m - 1);
}

}  // namespace tc
