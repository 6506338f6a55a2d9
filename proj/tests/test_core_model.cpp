#include "doctest.h"
#include "teamcheck/error.hpp"
#include "teamcheck/structure.hpp"
#include "teamcheck/team.hpp"

using namespace tc;

namespace {

Structure plain(std::size_t n) { return Structure(Vocabulary{}, n); }

Assignment asg(std::vector<Assignment::Binding> b) { return Assignment(std::move(b)); }

}  // namespace

TEST_CASE("duplicate expands over the domain") {
  auto a2 = plain(2);
  auto d = duplicate(a2, Team::singleton_empty(), "x");
  CHECK(d == Team({"x"}, {{0}, {1}}));
  CHECK(duplicate(a2, Team({"y"}), "x").empty());

  auto a3 = plain(3);
  auto t = duplicate(a3, Team({"x"}, {{0}}), "y");
  CHECK(t == Team({"x", "y"}, {{0, 0}, {0, 1}, {0, 2}}));
  CHECK(t.domain() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("duplicate is idempotent and restriction undoes it") {
  auto a = plain(3);
  Team t({"x", "y"}, {{0, 1}, {2, 2}});
  auto once = duplicate(a, t, "x");
  CHECK(duplicate(a, once, "x") == once);
  auto fresh = duplicate(a, t, "z");
  CHECK(fresh.size() == t.size() * 3);
  CHECK(restrict_to(fresh, {"x", "y"}) == t);
}

TEST_CASE("supplement follows the supplementing function") {
  auto a = plain(2);
  Team t({"x"}, {{0}, {1}});
  SupplementingFunction f;
  f[asg({{"x", 0}})] = {1};
  f[asg({{"x", 1}})] = {0, 1};
  CHECK(supplement(a, t, "y", f) == Team({"x", "y"}, {{0, 1}, {1, 0}, {1, 1}}));

  SupplementingFunction full;
  full[asg({{"x", 0}})] = {0, 1};
  full[asg({{"x", 1}})] = {0, 1};
  auto s = supplement(a, t, "y", full);
  CHECK(s == duplicate(a, t, "y"));
  CHECK(s.is_subteam_of(duplicate(a, t, "y")));

  CHECK(supplement(a, Team({"x"}), "y", {}).empty());
}

TEST_CASE("supplement rejects bad functions") {
  auto a = plain(2);
  Team t({"x"}, {{0}, {1}});
  SupplementingFunction missing;
  missing[asg({{"x", 0}})] = {1};
  CHECK_THROWS_AS(supplement(a, t, "y", missing), InputError);
  SupplementingFunction empty;
  empty[asg({{"x", 0}})] = {};
  empty[asg({{"x", 1}})] = {0};
  CHECK_THROWS_AS(supplement(a, t, "y", empty), InputError);
}

TEST_CASE("restriction projects and deduplicates") {
  Team t({"x", "y"}, {{0, 1}, {0, 2}});
  auto r = restrict_to(t, {"x"});
  CHECK(r == Team({"x"}, {{0}}));
  CHECK(r.size() == 1);
  CHECK(restrict_to(t, {"x", "y"}) == t);
  CHECK(restrict_to(Team({"x", "y"}, {{0, 1}, {1, 1}}), {"y"}) == Team({"y"}, {{1}}));
  CHECK_THROWS_AS(restrict_to(t, {"z"}), InputError);
}

TEST_CASE("rel reads tuples in the requested column order") {
  CHECK(rel(Team({"x"}), {"x"}).empty());
  CHECK(rel(Team({"x", "y"}, {{0, 1}}), {"y", "x"}) == TupleSet{{1, 0}});
  CHECK(rel(Team({"x"}, {{2}, {5}}), {"x"}) == TupleSet{{2}, {5}});
  CHECK_THROWS_AS(rel(Team({"x", "y"}, {{0, 1}}), {"x"}), InputError);
}

TEST_CASE("assignments are enumerated lexicographically") {
  auto a3 = plain(3);
  std::vector<Assignment> none(all_assignments(a3, {}).begin(), all_assignments(a3, {}).end());
  REQUIRE(none.size() == 1);
  CHECK(none[0].size() == 0);

  auto a2 = plain(2);
  std::vector<Assignment> xs;
  for (const auto& s : all_assignments(a2, {"x"})) xs.push_back(s);
  CHECK(xs == std::vector<Assignment>{asg({{"x", 0}}), asg({{"x", 1}})});

  std::vector<Assignment> xy;
  for (const auto& s : all_assignments(a3, {"y", "x"})) xy.push_back(s);
  REQUIRE(xy.size() == 9);
  CHECK(xy[1] == asg({{"x", 0}, {"y", 1}}));
  CHECK(xy[3] == asg({{"x", 1}, {"y", 0}}));
  CHECK(std::is_sorted(xy.begin(), xy.end()));
}

TEST_CASE("teams use set semantics") {
  Team t({"y", "x"}, {{1, 0}, {1, 0}, {2, 0}});
  CHECK(t.size() == 2);
  CHECK(t.domain() == std::vector<std::string>{"x", "y"});
  CHECK(t == Team({"x", "y"}, {{0, 2}, {0, 1}}));
  CHECK(Team::singleton_empty().size() == 1);
  CHECK(Team().empty());
}

TEST_CASE("structure format round trip") {
  const char* text =
      "# comment\n"
      "domain 3\n"
      "rel E/2 : (0,1) (1,2)\n"
      "rel P/1 : (2)\n"
      "const o = 1\n";
  auto a = parse_structure(text);
  CHECK(a.domain_size() == 3);
  CHECK(a.relation("E") == TupleSet{{0, 1}, {1, 2}});
  CHECK(a.constant("o") == 1);
  CHECK(parse_structure(render_structure(a)) == a);

  auto labelled = parse_structure("domain 2\nlabels a b\nrel E/2 : (a,b)\n");
  CHECK(labelled.relation("E") == TupleSet{{0, 1}});
  CHECK(labelled.label(1) == "b");
  CHECK(parse_structure(render_structure(labelled)) == labelled);
}

TEST_CASE("structure format errors") {
  CHECK_THROWS_AS(parse_structure("domain 0\n"), InputError);
  CHECK_THROWS_AS(parse_structure("domain 2\nrel E/2 : (0,2)\n"), InputError);
  CHECK_THROWS_AS(parse_structure("domain 2\nrel E/2 : (0)\n"), InputError);
  CHECK_THROWS_AS(parse_structure("domain 2\nrel E/2 : (0,1)\nrel E/1 : (0)\n"), InputError);
  CHECK_THROWS_AS(parse_structure("rel E/2 : (0,1)\n"), InputError);
  try {
    parse_structure("domain 2\nbogus line\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("team format") {
  auto a = parse_structure("domain 3\nlabels a b c\n");
  auto t = parse_team("vars x y\nx=a y=b\ny=c x=1\n", a);
  CHECK(t == Team({"x", "y"}, {{0, 1}, {1, 2}}));
  CHECK(parse_team(render_team(t, a), a) == t);
  auto empty = parse_team("", a, {"z"});
  CHECK(empty.empty());
  CHECK(empty.domain() == std::vector<std::string>{"z"});
  CHECK_THROWS_AS(parse_team("vars x y\nx=a\n", a), InputError);
  CHECK_THROWS_AS(parse_team("vars x\nx=d\n", a), InputError);
}
