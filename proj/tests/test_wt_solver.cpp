#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "teamcheck/error.hpp"
#include "teamcheck/generators.hpp"
#include "teamcheck/graph.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/wt_solver.hpp"

using namespace tc;

namespace {

// All k-teams over Fr(φ) that satisfy φ, first in colex order of the
// assignment indices.
std::optional<Team> first_satisfying(const Structure& a, const Formula& phi, std::size_t k) {
  auto fv = free_vars(phi);
  std::vector<std::string> vars(fv.begin(), fv.end());
  const auto total = assignment_count(a.domain_size(), vars.size());
  std::vector<std::vector<std::uint64_t>> combos;
  std::vector<std::uint64_t> cur;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t from) {
    if (cur.size() == k) {
      combos.push_back(cur);
      return;
    }
    for (std::uint64_t i = from; i < total; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(combos.begin(), combos.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  for (const auto& c : combos) {
    std::vector<Tuple> rows;
    for (auto i : c) rows.push_back(assignment_tuple(a.domain_size(), vars.size(), i));
    Team t(vars, rows);
    if (oracle::sat(a, t, phi)) return t;
  }
  return std::nullopt;
}

bool solvable(const Structure& a, const Formula& phi, std::size_t k) {
  return wt_solve({a, phi, k}).has_value();
}

}  // namespace

TEST_CASE("dominating set of a star") {
  auto e = encode_domset(Graph::star(4), 1);
  auto w = wt_solve(e.instance);
  REQUIRE(w);
  CHECK(*w == Team({"z"}, {{0}}));
}

TEST_CASE("k = 0 gives the empty team") {
  auto a = graph_structure(Graph::path(3));
  for (const char* f : {"x!=x", "E(x,y) & inc(x;y)", "dep(;x)"}) {
    auto phi = parse_formula(f);
    auto r = wt_search({a, phi, 0});
    REQUIRE(r.witness);
    CHECK(r.witness->empty());
    CHECK(r.path == "empty");
  }
}

TEST_CASE("triangle clique encoding") {
  auto e = encode_clique(Graph::complete(3), 3);
  CHECK(e.instance.k == 6);
  auto w = wt_solve(e.instance);
  REQUIRE(w);
  CHECK(*w == Team({"x", "y"}, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}));
}

TEST_CASE("counting path for first-order formulas") {
  auto a = graph_structure(Graph::path(4));
  auto phi = parse_formula("E(x,y)");
  CHECK(wt_solve_fo(a, phi, 6));
  CHECK_FALSE(wt_solve_fo(a, phi, 7));
  CHECK(wt_solve_fo(a, phi, 0));
  CHECK_FALSE(wt_solve_fo(a, parse_formula("x!=x"), 1));
  CHECK_THROWS_AS(wt_solve_fo(a, parse_formula("dep(x;y)"), 1), EvalError);
  auto r = wt_search({a, phi, 6});
  CHECK(r.path == "first-order");
  REQUIRE(r.witness);
  CHECK(r.witness->size() == 6);
}

TEST_CASE("sentences have only two teams") {
  auto a = graph_structure(Graph::complete(3));
  auto inc_sentence = parse_formula("forall x exists y (inc(y;x) & E(x,y))");
  for (auto phi : {inc_sentence, parse_formula("forall x exists y E(x,y)")}) {
    CHECK(wt_solve_sentence(a, phi, 0));
    CHECK(wt_solve_sentence(a, phi, 1) == check_sentence(a, phi));
    CHECK_FALSE(wt_solve_sentence(a, phi, 2));
    CHECK_FALSE(solvable(a, phi, 2));
  }
  CHECK(wt_solve_sentence(a, inc_sentence, 1));
  CHECK_THROWS_AS(wt_solve_sentence(a, parse_formula("E(x,x)"), 1), InputError);
}

TEST_CASE("sizes are not monotone for union-closed formulas") {
  auto a = graph_structure(Graph::path(3));
  auto phi = parse_formula(kCliqueFormula);
  CHECK(solvable(a, phi, 2));
  CHECK_FALSE(solvable(a, phi, 3));
  CHECK(solvable(a, phi, 4));
  for (std::size_t k = 0; k <= 5; ++k) CHECK(solvable(a, phi, k) == first_satisfying(a, phi, k).has_value());

  auto b = Structure(Vocabulary{}, 3);
  auto cover = parse_formula("forall y inc(y;x)");
  CHECK_FALSE(solvable(b, cover, 2));
  CHECK(solvable(b, cover, 3));
  CHECK_FALSE(solvable(b, cover, 4));
}

TEST_CASE("dependence formulas are downward closed in k") {
  for (std::uint64_t i = 0; i < 120; ++i) {
    auto rng = Rng::for_case(77, "dc-k", i);
    const std::size_t n = rng.between(1, 3);
    auto a = random_structure(rng, n);
    FormulaShape shape;
    shape.fragment = Fragment::kDependence;
    shape.max_size = 6;
    auto phi = random_formula(rng, shape);
    const auto total = assignment_count(n, free_vars(phi).size());
    std::size_t best = 0;
    for (std::size_t k = 1; k <= total; ++k)
      if (solvable(a, phi, k)) best = k;
    CAPTURE(render(phi));
    for (std::size_t k = 1; k <= best; ++k) CHECK(solvable(a, phi, k));
  }
}

TEST_CASE("witness is the first satisfying team in colex order") {
  const Fragment fragments[] = {Fragment::kFirstOrder, Fragment::kDependence, Fragment::kInclusion,
                                Fragment::kIndependence};
  for (std::uint64_t i = 0; i < 160; ++i) {
    auto rng = Rng::for_case(78, "colex", i);
    const std::size_t n = rng.between(1, 2);
    auto a = random_structure(rng, n);
    FormulaShape shape;
    shape.fragment = fragments[i % 4];
    shape.max_size = 5;
    auto phi = random_formula(rng, shape);
    const auto total = assignment_count(n, free_vars(phi).size());
    CAPTURE(render(phi));
    for (std::size_t k = 0; k <= std::min<std::uint64_t>(total, 3); ++k) {
      auto expected = first_satisfying(a, phi, k);
      WtSolveOptions fast, generic, parallel;
      generic.fast_path = false;
      parallel.jobs = 3;
      parallel.fast_path = false;
      CHECK(wt_solve({a, phi, k}, fast) == expected);
      CHECK(wt_solve({a, phi, k}, generic) == expected);
      CHECK(wt_solve({a, phi, k}, parallel) == expected);
    }
  }
}

TEST_CASE("too many rows") {
  auto a = Structure(Vocabulary{}, 2);
  auto r = wt_search({a, parse_formula("x=x | dep(;x)"), 3});
  CHECK(r.path == "too-large");
  CHECK_FALSE(r.witness);
}

TEST_CASE("weighted Fagin checks") {
  auto k3 = graph_structure(Graph::complete(3));
  auto c5 = graph_structure(Graph::cycle(5));
  auto star = graph_structure(Graph::star(4));
  auto phi_c = clique_wd_formula();
  auto phi_d = domset_wd_formula();
  CHECK(wd_check(k3, phi_c, {{0}, {1}, {2}}));
  CHECK(wd_check(star, phi_d, {{0}}));
  CHECK_FALSE(wd_check(star, phi_d, {{1}}));
  CHECK(wd_check(k3, phi_c, {}));
  CHECK_FALSE(wd_check(c5, phi_c, {{0}, {1}, {2}}));
  CHECK_THROWS_AS(wd_check(k3, phi_c, {{0, 1}}), InputError);
  CHECK_THROWS_AS(wd_check(k3, phi_c, {{7}}), InputError);

  auto sol = wd_solve(k3, phi_c, 3);
  REQUIRE(sol);
  CHECK(*sol == TupleSet{{0}, {1}, {2}});
  CHECK_FALSE(wd_solve(c5, phi_c, 3));
  auto none = wd_solve(k3, phi_c, 0);
  REQUIRE(none);
  CHECK(none->empty());
  CHECK(polarity_of(phi_c) == Polarity::kNegative);
  CHECK(polarity_of(phi_d) == Polarity::kPositive);
}

TEST_CASE("Fagin clique search matches brute force on small graphs") {
  auto phi_c = clique_wd_formula();
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      auto g = graph_from_mask(n, mask);
      auto a = graph_structure(g);
      for (std::size_t k = 0; k <= n; ++k)
        CHECK(wd_solve(a, phi_c, k).has_value() == graph_brute(GraphProblem::kClique, g, k));
    }
  }
}
