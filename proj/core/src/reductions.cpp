#include "teamcheck/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "teamcheck/error.hpp"

namespace tc {

namespace {

Encoding decided(bool answer, std::string note) {
  Structure one(Vocabulary(), 1);
  auto x = Term::var("x");
  auto formula = answer ? eq(x, x) : neq(x, x);
  return Encoding{WtInstance{std::move(one), formula, 1}, answer, std::move(note)};
}

std::string count(std::size_t k) { return std::to_string(k); }

}  // namespace

Encoding encode_clique(const Graph& graph, std::size_t k) {
  const std::size_t n = graph.vertex_count();
  if (k == 0) return decided(true, "k = 0: the empty set is a clique");
  if (k > n) return decided(false, "k = " + count(k) + " exceeds |V| = " + count(n));
  if (k == 1) return decided(true, "k = 1: any single vertex is a clique");
  auto s = graph_structure(graph);
  auto f = parse_formula(kCliqueFormula, &s.vocabulary());
  return Encoding{WtInstance{std::move(s), f, k * k - k}, std::nullopt, {}};
}

Encoding encode_domset(const Graph& graph, std::size_t k) {
  const std::size_t n = graph.vertex_count();
  if (k == 0)
    return decided(n == 0, "k = 0: only the empty graph has an empty dominating set");
  if (k > n) return decided(false, "k = " + count(k) + " exceeds |V| = " + count(n));
  auto s = graph_structure(graph);
  auto f = parse_formula(kDomsetFormula, &s.vocabulary());
  return Encoding{WtInstance{std::move(s), f, k}, std::nullopt, {}};
}

Structure indset_structure(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) throw InputError("a graph structure needs at least one vertex");
  TupleSet nset, pset, iset;
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < n; ++v) {
    nset.insert({static_cast<Element>(v)});
    labels.push_back("v" + std::to_string(v));
  }
  Element id = static_cast<Element>(n);
  for (auto [u, v] : graph.edges()) {
    pset.insert({id});
    iset.insert({static_cast<Element>(u), id});
    iset.insert({static_cast<Element>(v), id});
    labels.push_back("e" + std::to_string(u) + "_" + std::to_string(v));
    ++id;
  }
  Vocabulary voc({{"N", 1}, {"P", 1}, {"I", 2}}, {});
  return Structure(voc, id, {{"N", nset}, {"P", pset}, {"I", iset}}, {}, std::move(labels));
}

Encoding encode_indset(const Graph& graph, std::size_t k) {
  const std::size_t n = graph.vertex_count();
  if (k == 0) return decided(true, "k = 0: the empty set is independent");
  if (k > n) return decided(false, "k = " + count(k) + " exceeds |V| = " + count(n));
  auto s = indset_structure(graph);
  auto f = parse_formula(kIndsetFormula, &s.vocabulary());
  return Encoding{WtInstance{std::move(s), f, k}, std::nullopt, {}};
}

std::optional<std::size_t> syntax_depth(const PropFormula& p) {
  // A collapsed tree of height h fits at depth h + 1 when it fits at all.
  std::size_t height = 0;
  auto measure = [&](auto&& self, const PropFormula& g, std::size_t level) -> void {
    height = std::max(height, level);
    for (const auto& c : g.children()) self(self, c, level + 1);
  };
  measure(measure, p.collapsed(), 0);
  for (std::size_t t = 0; t <= height + 1; ++t)
    if (min_fan_in(p, t) == std::size_t{1}) return t;
  return std::nullopt;
}

Structure build_syntax_circuit(const PropFormula& p, std::optional<std::size_t> depth) {
  std::size_t t;
  if (depth) {
    t = *depth;
  } else {
    auto least = syntax_depth(p);
    if (!least) throw InputError("formula has no alternating form with bottom fan-in 1");
    t = *least;
  }
  if (min_fan_in(p, t) != std::size_t{1})
    throw InputError("formula is not in Gamma_{" + std::to_string(t) + ",1}");
  PropFormula tree = layered(p, t);

  std::vector<unsigned> vars = tree.variables();
  std::map<unsigned, Element> var_element;
  std::vector<std::string> labels;
  for (auto v : vars) {
    var_element[v] = static_cast<Element>(labels.size());
    labels.push_back("x" + std::to_string(v));
  }
  TupleSet e, i;
  for (const auto& [v, el] : var_element) i.insert({el});

  std::size_t gate_no = 0;
  auto visit = [&](auto&& self, const PropFormula& node) -> Element {
    if (node.is_literal()) return var_element.at(node.variable());
    Element me = static_cast<Element>(labels.size());
    labels.push_back("g" + std::to_string(gate_no++));
    for (const auto& c : node.children()) e.insert({me, self(self, c)});
    return me;
  };
  Element root = visit(visit, tree);

  Vocabulary voc({{"E", 2}, {"I", 1}}, {"o"});
  const std::size_t n = labels.size();
  return Structure(voc, n, {{"E", std::move(e)}, {"I", std::move(i)}}, {{"o", root}},
                   std::move(labels));
}

namespace {

std::string level_var(std::size_t i) { return "x" + std::to_string(i); }

// Builds the block for level i; `innermost` produces the literal part at xt.
Formula theta_level(std::size_t i, std::size_t t, const std::function<Formula(Term)>& innermost) {
  Term prev = i == 1 ? Term::constant("o") : Term::var(level_var(i - 1));
  Term cur = Term::var(level_var(i));
  bool universal = i % 2 == 1;
  if (i == t) {
    Formula inner = innermost(cur);
    if (universal) return forall(level_var(i), disj(neg_rel("E", {prev, cur}), inner));
    return exists(level_var(i), conj(conj(rel("E", {prev, cur}), inner.left()), inner.right()));
  }
  Formula rest = theta_level(i + 1, t, innermost);
  if (universal) return forall(level_var(i), disj(neg_rel("E", {prev, cur}), rest));
  return exists(level_var(i), conj(rel("E", {prev, cur}), rest));
}

}  // namespace

WdFormula theta_formula(std::size_t t, Polarity polarity) {
  if (t < 1) throw InputError("theta needs t >= 1");
  if (polarity == Polarity::kMixed) throw InputError("theta polarity must be positive or negative");
  bool positive = polarity == Polarity::kPositive;
  auto f = theta_level(1, t, [&](Term x) {
    return conj(rel("I", {x}), positive ? rel("S", {x}) : neg_rel("S", {x}));
  });
  return WdFormula{f, "S", 1, std::string("I")};
}

Formula phi_t_inclusion(std::size_t t) {
  if (t < 1) throw InputError("phi_t needs t >= 1");
  if (t % 2 != 0) throw InputError("the inclusion construction needs an even t");
  return theta_level(1, t, [](Term x) { return conj(rel("I", {x}), inc({x}, {Term::var("z")})); });
}

Encoding encode_wsat(const PropFormula& p, std::size_t k) {
  if (p.polarity() != Polarity::kPositive)
    throw InputError("the inclusion reduction needs a formula with positive literals only");
  const std::size_t vars = p.var_count();
  if (k == 0) return decided(wsat_brute(p, 0), "k = 0: decided by evaluating the all-false assignment");
  if (k > vars) return decided(false, "k = " + count(k) + " exceeds the " + count(vars) + " variables");
  auto depth = syntax_depth(p);
  if (!depth) throw InputError("formula has no alternating form with bottom fan-in 1");
  std::size_t t = std::max<std::size_t>(*depth, 2);
  if (t % 2 != 0) ++t;
  auto s = build_syntax_circuit(p, t);
  return Encoding{WtInstance{std::move(s), phi_t_inclusion(t), k}, std::nullopt,
                  "t = " + std::to_string(t)};
}

std::optional<std::set<unsigned>> wsat_witness(const PropFormula& p, std::size_t k) {
  auto vars = p.variables();
  if (k > vars.size()) return std::nullopt;
  std::vector<char> pick(vars.size(), 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
  do {
    std::set<unsigned> on;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (pick[i]) on.insert(vars[i]);
    if (p.evaluate(on)) return on;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

bool wsat_brute(const PropFormula& p, std::size_t k) { return wsat_witness(p, k).has_value(); }

}  // namespace tc
