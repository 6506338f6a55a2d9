#include "doctest.h"
#include "oracle.hpp"
#include "teamcheck/classify.hpp"
#include "teamcheck/error.hpp"
#include "teamcheck/evaluator.hpp"
#include "teamcheck/generators.hpp"
#include "teamcheck/graph.hpp"
#include "teamcheck/reductions.hpp"

using namespace tc;

namespace {

Structure plain(std::size_t n) { return Structure(Vocabulary{}, n); }

Structure digraph(std::size_t n, TupleSet edges) {
  return Structure(Vocabulary({{"E", 2}}, {}), n, {{"E", std::move(edges)}});
}

Assignment asg(std::vector<Assignment::Binding> b) { return Assignment(std::move(b)); }

struct RandomCase {
  Structure structure;
  Team team;
  Formula formula;
};

RandomCase draw(std::uint64_t index, Fragment fragment, std::size_t n_max, std::size_t rows,
                std::size_t size) {
  auto rng = Rng::for_case(20240, "evaluator-test", index);
  const std::size_t n = rng.between(1, n_max);
  auto a = random_structure(rng, n);
  auto team = random_team(rng, n, {"x", "y"}, rows);
  FormulaShape shape;
  shape.fragment = fragment;
  shape.max_size = size;
  return {a, team, random_formula(rng, shape)};
}

}  // namespace

TEST_CASE("the empty team satisfies everything") {
  auto a = digraph(2, {{0, 1}});
  for (const char* f : {"x!=x", "E(x,x)", "dep(;x)", "inc(x;y)",
                        "exists y (E(x,y) & dep(x;y))", "forall y indep(;x;y)"}) {
    auto phi = parse_formula(f);
    CHECK(eval(a, Team({"x", "y"}), phi));
    CHECK(eval(a, Team({"x", "y"}), phi, EvalOptions::reference()));
  }
}

TEST_CASE("independent sets of a path") {
  auto a = indset_structure(Graph::path(3));
  auto phi = parse_formula(kIndsetFormula);
  CHECK(eval(a, Team({"x"}, {{0}, {2}}), phi));
  CHECK_FALSE(eval(a, Team({"x"}, {{0}, {1}}), phi));
  CHECK(eval(a, Team({"x"}, {{0}, {2}}), phi, EvalOptions::reference()));
  CHECK_FALSE(eval(a, Team({"x"}, {{0}, {1}}), phi, EvalOptions::reference()));
}

TEST_CASE("inclusion atom on swapped pairs") {
  auto a = plain(3);
  Team t({"x", "y"}, {{1, 2}, {2, 1}});
  CHECK(eval(a, t, parse_formula("inc(x;y)")));
  CHECK_FALSE(eval(a, Team({"x", "y"}, {{1, 2}}), parse_formula("inc(x;y)")));
}

TEST_CASE("classical evaluation") {
  auto a = digraph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(eval_fo_tarski(a, asg({{"x", 0}, {"y", 1}}), parse_formula("E(x,y)")));
  CHECK_FALSE(eval_fo_tarski(a, asg({{"x", 1}, {"y", 0}}), parse_formula("E(x,y)")));
  CHECK(eval_fo_tarski(a, Assignment(), parse_formula("forall x exists y E(x,y)")));
  CHECK_FALSE(eval_fo_tarski(a, Assignment(), parse_formula("exists x forall y E(x,y)")));
  CHECK_FALSE(eval_fo_tarski(a, asg({{"x", 2}}), parse_formula("x!=x")));
  CHECK_THROWS_AS(eval_fo_tarski(a, asg({{"x", 0}}), parse_formula("dep(;x)")), EvalError);
}

TEST_CASE("maximal subteam of an inclusion atom") {
  auto a = plain(4);
  Team t({"x", "y"}, {{1, 2}, {2, 3}, {3, 3}});
  auto phi = parse_formula("inc(x;y)");
  CHECK(max_subteam(a, t, phi) == Team({"x", "y"}, {{3, 3}}));
  CHECK(max_subteam(a, Team({"x", "y"}), phi).empty());

  auto g = digraph(3, {{0, 1}, {1, 2}});
  Team all({"x", "y"}, {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
  CHECK(max_subteam(g, all, parse_formula("E(x,y)")) == Team({"x", "y"}, {{0, 1}, {1, 2}}));
  CHECK_THROWS_AS(max_subteam(a, t, parse_formula("dep(x;y)")), EvalError);
}

TEST_CASE("inclusion evaluation on the triangle") {
  auto k3 = graph_structure(Graph::complete(3));
  auto phi = parse_formula(kCliqueFormula);
  Team pairs({"x", "y"}, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  CHECK(eval_inclusion(k3, pairs, phi));
  CHECK(eval(k3, pairs, phi, EvalOptions::reference()));
  CHECK_FALSE(eval_inclusion(k3, Team({"x", "y"}, {{0, 1}}), phi));
  CHECK_FALSE(eval(k3, Team({"x", "y"}, {{0, 1}}), phi));
}

TEST_CASE("sentences") {
  auto refl = digraph(2, {{0, 0}, {1, 1}});
  CHECK(check_sentence(refl, parse_formula("forall x E(x,x)")));
  CHECK_FALSE(check_sentence(digraph(2, {{0, 0}}), parse_formula("forall x E(x,x)")));

  auto two = plain(2);
  CHECK(check_sentence(two, parse_formula("exists x exists y (dep(x;y) & x!=y)")));
  CHECK_FALSE(check_sentence(two, parse_formula("forall x exists y (dep(;y) & x!=y)")));
  auto inc_sentence = parse_formula("forall x exists y (inc(y;x) & x!=y)");
  CHECK(check_sentence(two, inc_sentence) ==
        eval(two, Team::singleton_empty(), inc_sentence, EvalOptions::reference()));
  CHECK_THROWS_AS(check_sentence(two, parse_formula("P(x)")), InputError);
}

TEST_CASE("input validation") {
  auto a = digraph(2, {{0, 1}});
  CHECK_THROWS_AS(eval(a, Team({"x"}, {{0}}), parse_formula("E(x,y)")), InputError);
  CHECK_THROWS_AS(eval(a, Team({"x"}, {{0}}), parse_formula("Q(x)")), InputError);
  CHECK_THROWS_AS(eval(a, Team({"x"}, {{0}}), parse_formula("E(x)")), InputError);
  CHECK_THROWS_AS(eval(a, Team({"x"}, {{0}}), parse_formula("x=c")), InputError);
  // Extra columns are fine.
  CHECK(eval(a, Team({"x", "y", "z"}, {{0, 1, 1}}), parse_formula("E(x,y)")));
}

TEST_CASE("evaluator matches the definitional oracle") {
  const Fragment fragments[] = {Fragment::kFirstOrder, Fragment::kDependence, Fragment::kInclusion,
                                Fragment::kIndependence};
  int checked = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    auto c = draw(i, fragments[i % 4], 2, 3, 5);
    bool expected = oracle::sat(c.structure, c.team, c.formula);
    CAPTURE(render(c.formula));
    CAPTURE(c.team.size());
    CHECK(eval(c.structure, c.team, c.formula) == expected);
    CHECK(eval(c.structure, c.team, c.formula, EvalOptions::reference()) == expected);
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("each shortcut alone agrees with the reference search") {
  const Fragment fragments[] = {Fragment::kDependence, Fragment::kInclusion,
                                Fragment::kIndependence, Fragment::kMixed};
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto c = draw(1000 + i, fragments[i % 3], 3, 4, 7);
    bool expected = eval(c.structure, c.team, c.formula, EvalOptions::reference());
    CAPTURE(render(c.formula));
    for (int which = 0; which < 5; ++which) {
      auto o = EvalOptions::reference();
      if (which == 0) o.flat_first_order = true;
      if (which == 1) o.strict_downward = true;
      if (which == 2) o.locality = true;
      if (which == 3) o.prune = true;
      if (which == 4) o.inclusion_fixpoint = true;
      CHECK(eval(c.structure, c.team, c.formula, o) == expected);
    }
  }
}

TEST_CASE("maximal subteam is the union of satisfying subteams") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto c = draw(5000 + i, Fragment::kInclusion, 2, 4, 6);
    CAPTURE(render(c.formula));
    std::vector<Tuple> united;
    for (const auto& sub : oracle::subteams(c.team))
      if (oracle::sat(c.structure, sub, c.formula))
        united.insert(united.end(), sub.rows().begin(), sub.rows().end());
    auto m = max_subteam(c.structure, c.team, c.formula);
    CHECK(m == Team(c.team.domain(), united));
    CHECK(eval_inclusion(c.structure, c.team, c.formula) == (m == c.team));
  }
}

TEST_CASE("small caches do not change answers") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto c = draw(7000 + i, Fragment::kIndependence, 3, 4, 7);
    EvalOptions tiny;
    tiny.max_cache = 1;
    auto none = EvalOptions::reference();
    none.max_cache = 0;
    bool expected = eval(c.structure, c.team, c.formula);
    CHECK(eval(c.structure, c.team, c.formula, tiny) == expected);
    CHECK(eval(c.structure, c.team, c.formula, none) == expected);
  }
}
