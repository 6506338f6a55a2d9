#pragma once

#include <functional>
#include <set>
#include <vector>

#include "teamcheck/formula.hpp"
#include "teamcheck/structure.hpp"
#include "teamcheck/team.hpp"

namespace oracle {

using tc::Assignment;
using tc::Element;
using tc::Formula;
using tc::Op;
using tc::Structure;
using tc::Team;
using tc::Terms;
using tc::Tuple;

inline Element value(const Structure& a, const Assignment& s, const tc::Term& t) {
  return t.is_variable() ? s.at(t.name) : a.constant(t.name);
}

inline Tuple values(const Structure& a, const Assignment& s, const Terms& ts) {
  Tuple out;
  for (const auto& t : ts) out.push_back(value(a, s, t));
  return out;
}

inline Team from_rows(const std::vector<std::string>& domain, const std::vector<Assignment>& rows) {
  return Team::from_assignments(domain, rows);
}

// Lax team semantics read directly off the definitions, with no pruning or
// caching. Only usable on very small inputs.
inline bool sat(const Structure& a, const Team& team, const Formula& f) {
  const auto rows = team.assignments();
  switch (f.op()) {
    case Op::kEq:
    case Op::kNeq:
      for (const auto& s : rows) {
        bool same = value(a, s, f.first()[0]) == value(a, s, f.first()[1]);
        if (same != (f.op() == Op::kEq)) return false;
      }
      return true;
    case Op::kRel:
    case Op::kNegRel:
      for (const auto& s : rows) {
        auto t = values(a, s, f.first());
        if (a.holds(f.relation(), t) != (f.op() == Op::kRel)) return false;
      }
      return true;
    case Op::kDep:
      for (const auto& s : rows)
        for (const auto& r : rows)
          if (values(a, s, f.first()) == values(a, r, f.first()) &&
              values(a, s, f.second()) != values(a, r, f.second()))
            return false;
      return true;
    case Op::kInc:
      for (const auto& s : rows) {
        bool found = false;
        for (const auto& r : rows) found = found || values(a, s, f.first()) == values(a, r, f.second());
        if (!found) return false;
      }
      return true;
    case Op::kIndep:
      for (const auto& s : rows)
        for (const auto& r : rows) {
          if (values(a, s, f.first()) != values(a, r, f.first())) continue;
          bool found = false;
          for (const auto& q : rows)
            found = found || (values(a, q, f.first()) == values(a, s, f.first()) &&
                              values(a, q, f.second()) == values(a, s, f.second()) &&
                              values(a, q, f.third()) == values(a, r, f.third()));
          if (!found) return false;
        }
      return true;
    case Op::kAnd:
      return sat(a, team, f.left()) && sat(a, team, f.right());
    case Op::kOr: {
      // Every cover T = T0 ∪ T1: each row goes left, right or both.
      std::vector<int> label(rows.size(), 0);
      while (true) {
        std::vector<Assignment> l, r;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (label[i] != 1) l.push_back(rows[i]);
          if (label[i] != 0) r.push_back(rows[i]);
        }
        if (sat(a, from_rows(team.domain(), l), f.left()) &&
            sat(a, from_rows(team.domain(), r), f.right()))
          return true;
        std::size_t i = 0;
        while (i < rows.size() && label[i] == 2) label[i++] = 0;
        if (i == rows.size()) return false;
        ++label[i];
      }
    }
    case Op::kExists: {
      // Every supplementing function into nonempty subsets of the domain.
      const std::uint32_t subsets = (1u << a.domain_size()) - 1;
      std::vector<std::uint32_t> choice(rows.size(), 1);
      while (true) {
        tc::SupplementingFunction fn;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          std::set<Element> vals;
          for (Element e = 0; e < a.domain_size(); ++e)
            if (choice[i] >> e & 1) vals.insert(e);
          fn[rows[i]] = vals;
        }
        if (sat(a, tc::supplement(a, team, f.variable(), fn), f.body())) return true;
        std::size_t i = 0;
        while (i < rows.size() && choice[i] == subsets) choice[i++] = 1;
        if (i == rows.size()) return false;
        ++choice[i];
      }
    }
    case Op::kForall:
      return sat(a, tc::duplicate(a, team, f.variable()), f.body());
  }
  return false;
}

inline std::vector<Team> subteams(const Team& team) {
  std::vector<Team> out;
  const auto& rows = team.rows();
  for (std::uint32_t mask = 0; mask < (1u << rows.size()); ++mask) {
    std::vector<Tuple> pick;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (mask >> i & 1) pick.push_back(rows[i]);
    out.emplace_back(team.domain(), pick);
  }
  return out;
}

// Every team over `vars` with exactly k rows.
inline std::vector<Team> teams_of_size(std::size_t n, const std::vector<std::string>& vars,
                                       std::size_t k) {
  const auto total = tc::assignment_count(n, vars.size());
  std::vector<Team> out;
  std::function<void(std::uint64_t, std::vector<Tuple>&)> rec = [&](std::uint64_t from,
                                                                   std::vector<Tuple>& cur) {
    if (cur.size() == k) {
      out.emplace_back(vars, cur);
      return;
    }
    for (std::uint64_t i = from; i < total; ++i) {
      cur.push_back(tc::assignment_tuple(n, vars.size(), i));
      rec(i + 1, cur);
      cur.pop_back();
    }
  };
  std::vector<Tuple> cur;
  rec(0, cur);
  return out;
}

}  // namespace oracle
