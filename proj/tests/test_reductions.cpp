#include <functional>

#include "doctest.h"
#include "oracle.hpp"
#include "teamcheck/circuit.hpp"
#include "teamcheck/classify.hpp"
#include "teamcheck/error.hpp"
#include "teamcheck/generators.hpp"
#include "teamcheck/graph.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/wt_solver.hpp"

using namespace tc;

namespace {

bool target_yes(const Encoding& e) {
  if (e.decided) return *e.decided;
  return wt_solve(e.instance).has_value();
}

// DNF as a list of sets of (variable, sign) literals.
using Conjunct = std::set<std::pair<unsigned, bool>>;

std::vector<Conjunct> dnf(const PropFormula& p) {
  if (p.is_literal()) return {Conjunct{{p.variable(), p.positive()}}};
  std::vector<Conjunct> out;
  if (p.kind() == PropFormula::Kind::kOr) {
    for (const auto& c : p.children())
      for (auto& t : dnf(c)) out.push_back(std::move(t));
    return out;
  }
  out.push_back({});
  for (const auto& c : p.children()) {
    std::vector<Conjunct> next;
    for (const auto& a : out)
      for (const auto& b : dnf(c)) {
        Conjunct m = a;
        m.insert(b.begin(), b.end());
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

// Weight-k satisfiability read off the DNF: a consistent term with at most
// k positive and at most |vars| - k negative variables extends to weight k.
bool dnf_weight(const PropFormula& p, std::size_t k) {
  const std::size_t vars = p.var_count();
  if (k > vars) return false;
  for (const auto& t : dnf(p)) {
    std::set<unsigned> pos, neg;
    for (auto [v, s] : t) (s ? pos : neg).insert(v);
    bool clash = false;
    for (auto v : pos) clash = clash || neg.count(v);
    if (!clash && pos.size() <= k && neg.size() <= vars - k) return true;
  }
  return false;
}

BooleanCircuit and_of_or() {
  // 0,1,2 inputs; 3 = OR(0,1); 4 = AND(3,2).
  return BooleanCircuit({GateKind::kInput, GateKind::kInput, GateKind::kInput, GateKind::kOr,
                         GateKind::kAnd},
                        {{0, 3}, {1, 3}, {3, 4}, {2, 4}}, 4);
}

}  // namespace

TEST_CASE("clique encoding") {
  auto e = encode_clique(Graph::complete(3), 3);
  CHECK_FALSE(e.decided);
  CHECK(e.instance.k == 6);
  CHECK(render(e.instance.formula) == kCliqueFormula);
  CHECK(e.instance.structure.relation("E").size() == 6);

  auto k2 = encode_clique(Graph::complete(2), 2);
  CHECK(k2.instance.k == 2);
  CHECK(wt_solve(k2.instance) == Team({"x", "y"}, {{0, 1}, {1, 0}}));

  CHECK(*encode_clique(Graph(3), 0).decided);
  CHECK(*encode_clique(Graph(3), 1).decided);
  CHECK_FALSE(*encode_clique(Graph(0), 1).decided);
  CHECK_FALSE(*encode_clique(Graph::complete(3), 4).decided);
  for (std::size_t k = 2; k <= 4; ++k) CHECK(encode_clique(Graph::complete(5), k).instance.k == k * k - k);
}

TEST_CASE("clique encoding accepts a path in the five-cycle") {
  auto c5 = Graph::cycle(5);
  auto e = encode_clique(c5, 3);
  CHECK_FALSE(graph_brute(GraphProblem::kClique, c5, 3));
  Team path({"x", "y"}, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}});
  CHECK(oracle::sat(e.instance.structure, path, e.instance.formula));
  CHECK(wt_solve(e.instance).has_value());
}

TEST_CASE("dominating set encoding") {
  CHECK(target_yes(encode_domset(Graph::star(4), 1)));
  CHECK_FALSE(target_yes(encode_domset(Graph(3), 2)));
  CHECK(target_yes(encode_domset(Graph(3), 3)));
  CHECK_FALSE(*encode_domset(Graph::path(3), 0).decided);
  CHECK(*encode_domset(Graph(0), 0).decided);
  CHECK_FALSE(*encode_domset(Graph::path(3), 4).decided);
  auto e = encode_domset(Graph::path(5), 2);
  CHECK(e.instance.k == 2);
  CHECK(render(e.instance.formula) == kDomsetFormula);
}

TEST_CASE("independent set encoding") {
  CHECK(target_yes(encode_indset(Graph::path(3), 2)));
  CHECK_FALSE(target_yes(encode_indset(Graph::complete(3), 2)));
  CHECK(target_yes(encode_indset(Graph::complete(4), 1)));
  CHECK(*encode_indset(Graph::complete(4), 0).decided);
  CHECK_FALSE(*encode_indset(Graph::complete(2), 3).decided);
  CHECK(render(encode_indset(Graph::path(3), 2).instance.formula) == kIndsetFormula);

  auto a = indset_structure(Graph::path(3));
  CHECK(a.domain_size() == 5);
  CHECK(a.relation("N") == TupleSet{{0}, {1}, {2}});
  CHECK(a.relation("P") == TupleSet{{3}, {4}});
  CHECK(a.relation("I") == TupleSet{{0, 3}, {1, 3}, {1, 4}, {2, 4}});
  CHECK(a.label(3) == "e0_1");
}

TEST_CASE("graph oracle") {
  CHECK(graph_brute(GraphProblem::kClique, Graph::complete(3), 3));
  CHECK_FALSE(graph_brute(GraphProblem::kIndependentSet, Graph::complete(3), 2));
  CHECK(graph_brute(GraphProblem::kDominatingSet, Graph::path(5), 2));
  CHECK_FALSE(graph_brute(GraphProblem::kDominatingSet, Graph::path(5), 1));
  CHECK(graph_brute(GraphProblem::kIndependentSet, Graph(3), 3));
  CHECK_FALSE(graph_brute(GraphProblem::kClique, Graph(3), 4));
}

TEST_CASE("graph format") {
  auto g = parse_graph("# comment\np 4 2\ne 0 1\ne 2 3\n");
  CHECK(g.vertex_count() == 4);
  CHECK(g.adjacent(1, 0));
  CHECK(parse_graph(render_graph(g)) == g);
  CHECK_THROWS_AS(parse_graph("p 2 1\ne 0 0\n"), InputError);
  CHECK_THROWS_AS(parse_graph("p 2 1\ne 0 2\n"), InputError);
  CHECK_THROWS_AS(parse_graph("p 2 2\ne 0 1\n"), InputError);
  CHECK_THROWS_AS(parse_graph("e 0 1\n"), InputError);
  CHECK(graph_from_mask(3, 0b101) == Graph(3, {{0, 1}, {1, 2}}));
}

TEST_CASE("syntax circuits") {
  auto a = build_syntax_circuit(parse_prop("x1 & x2"));
  CHECK(a.domain_size() == 3);
  CHECK(a.labels() == std::vector<std::string>{"x1", "x2", "g0"});
  CHECK(a.relation("E") == TupleSet{{2, 0}, {2, 1}});
  CHECK(a.relation("I") == TupleSet{{0}, {1}});
  CHECK(a.constant("o") == 2);

  auto lit = build_syntax_circuit(parse_prop("x1"));
  CHECK(lit.domain_size() == 1);
  CHECK(lit.relation("I").count({lit.constant("o")}));

  auto two = build_syntax_circuit(parse_prop("x1 & (x2 | x3)"));
  CHECK(syntax_depth(parse_prop("x1 & (x2 | x3)")) == std::size_t{2});
  // x1, x2, x3, the root, a unary or above x1, and the or-gate.
  CHECK(two.domain_size() == 6);
  CHECK(two.relation("E").size() == 5);

  auto shared = build_syntax_circuit(parse_prop("(x1 | x2) & (x2 | x1)"));
  CHECK(shared.relation("I").size() == 2);
  CHECK_THROWS_AS(build_syntax_circuit(parse_prop("(x1 & x2) | (x2 & x3)"), 1), InputError);
}

namespace {
const Vocabulary kCircuitVocabulary({{"E", 2}, {"I", 1}, {"S", 1}}, {"o"});
}  // namespace

TEST_CASE("theta formulas") {
  auto t1 = theta_formula(1, Polarity::kNegative);
  CHECK(t1.formula == parse_formula("forall x1 (!E(o,x1) | (I(x1) & !S(x1)))", &kCircuitVocabulary));
  CHECK(t1.guard == std::optional<std::string>("I"));
  CHECK(polarity_of(t1) == Polarity::kNegative);

  auto t2 = theta_formula(2, Polarity::kPositive);
  CHECK(t2.formula ==
        parse_formula("forall x1 (!E(o,x1) | exists x2 (E(x1,x2) & I(x2) & S(x2)))",
                      &kCircuitVocabulary));
  CHECK(polarity_of(t2) == Polarity::kPositive);
  CHECK_THROWS_AS(theta_formula(0, Polarity::kPositive), InputError);
  CHECK_THROWS_AS(theta_formula(2, Polarity::kMixed), InputError);
}

TEST_CASE("inclusion level formula") {
  auto phi = phi_t_inclusion(2);
  CHECK(phi == parse_formula("forall x1 (!E(o,x1) | exists x2 (E(x1,x2) & I(x2) & inc(x2;z)))",
                             &kCircuitVocabulary));
  auto report = classify(phi);
  CHECK(report.fragment == Fragment::kInclusion);
  CHECK(report.free_vars == VarSet{"z"});
  CHECK_THROWS_AS(phi_t_inclusion(3), InputError);
  CHECK_THROWS_AS(phi_t_inclusion(0), InputError);

  auto psi = parse_prop("x1 & x2");
  CHECK(target_yes(encode_wsat(psi, 2)));
  CHECK_FALSE(target_yes(encode_wsat(psi, 1)));
  CHECK(encode_wsat(psi, 1).note == "t = 2");
  CHECK_THROWS_AS(encode_wsat(parse_prop("!x1"), 1), InputError);
}

TEST_CASE("weighted satisfiability oracle") {
  CHECK(wsat_brute(parse_prop("x1 & x2"), 2));
  CHECK_FALSE(wsat_brute(parse_prop("x1 & x2"), 1));
  CHECK(wsat_brute(parse_prop("x1 | x2"), 1));
  CHECK(wsat_witness(parse_prop("x3 | x2"), 1) == std::set<unsigned>{2});
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = Rng::for_case(91, "dnf", i);
    auto polarity = rng.chance(50) ? Polarity::kPositive : Polarity::kNegative;
    auto psi = random_gamma(rng, rng.between(1, 3), rng.between(1, 6), polarity);
    CAPTURE(render(psi));
    for (std::size_t k = 0; k <= psi.var_count() + 1; ++k) CHECK(wsat_brute(psi, k) == dnf_weight(psi, k));
  }
}

TEST_CASE("circuit evaluation and proof trees") {
  auto c = and_of_or();
  CHECK(circuit_eval(c, {0, 2}));
  CHECK(proof_tree_exists(c, {0, 2}));
  CHECK_FALSE(circuit_eval(c, {1}));
  CHECK_FALSE(proof_tree_exists(c, {1}));

  BooleanCircuit single({GateKind::kInput}, {}, 0);
  CHECK(circuit_eval(single, {0}));
  CHECK(proof_tree_exists(single, {0}));
  CHECK_FALSE(proof_tree_exists(single, {}));
  CHECK_THROWS_AS(circuit_eval(c, {3}), InputError);
  CHECK_THROWS_AS(proof_tree_exists(c, {4}), InputError);
}

TEST_CASE("circuit format and validation") {
  auto c = and_of_or();
  auto text = render_circuit(c);
  auto back = parse_circuit(text);
  CHECK(back.gates() == c.gates());
  CHECK(back.edges() == c.edges());
  CHECK(back.output() == c.output());
  CHECK_THROWS_AS(BooleanCircuit({GateKind::kOr, GateKind::kOr}, {{0, 1}, {1, 0}}, 0), InputError);
  CHECK_THROWS_AS(BooleanCircuit({GateKind::kInput, GateKind::kInput}, {{0, 1}}, 1), InputError);
  CHECK_THROWS_AS(BooleanCircuit({GateKind::kInput}, {}, 3), InputError);
  CHECK_THROWS_AS(parse_circuit("gate 0 xor\noutput 0\n"), InputError);
}

TEST_CASE("random circuits agree with proof trees") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = Rng::for_case(5, "circuit-test", i);
    auto c = random_circuit(rng, 6);
    CHECK(c.gate_count() <= 6);
    auto inputs = c.inputs();
    for (std::uint32_t s = 0; s < (1u << inputs.size()); ++s) {
      std::set<std::size_t> on;
      for (std::size_t j = 0; j < inputs.size(); ++j)
        if (s >> j & 1) on.insert(inputs[j]);
      CHECK(circuit_eval(c, on) == proof_tree_exists(c, on));
    }
  }
}
