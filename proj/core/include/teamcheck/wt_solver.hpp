#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "teamcheck/evaluator.hpp"
#include "teamcheck/formula.hpp"
#include "teamcheck/prop.hpp"
#include "teamcheck/structure.hpp"
#include "teamcheck/team.hpp"

namespace tc {

// One question "is there a team over Fr(φ) with exactly k rows satisfying φ?"
struct WtInstance {
  Structure structure;
  Formula formula;
  std::size_t k = 0;
};

struct WtSolveOptions {
  // FO: count satisfying assignments. FO(inc): maximal-subteam checks.
  // FO(dep): singleton filter plus pruned enumeration.
  bool fast_path = true;
  EvalOptions eval;
  // Worker threads for plain candidate enumeration. The witness returned
  // is the same for every value.
  unsigned jobs = 1;
};

struct WtResult {
  std::optional<Team> witness;
  // "empty", "too-large", "first-order", "inclusion", "dependence", "generic"
  std::string path;
  std::uint64_t candidates = 0;  // k-subsets examined
};

// Candidate teams are k-subsets of the assignments over Fr(φ), indexed as
// in all_assignments and visited in colex order; the witness is the first
// satisfying one.
WtResult wt_search(const WtInstance& instance, const WtSolveOptions& options = {});
std::optional<Team> wt_solve(const WtInstance& instance, const WtSolveOptions& options = {});

// Counting decision for first-order φ: at least k satisfying assignments.
bool wt_solve_fo(const Structure& structure, const Formula& formula, std::size_t k);

// k = 0 yes, k = 1 iff the sentence holds on {∅}, k >= 2 no.
bool wt_solve_sentence(const Structure& structure, const Formula& sentence, std::size_t k);

// A first-order sentence with one extra relation symbol, interpreted by the
// caller. When `guard` names a relation of the structure, solutions are
// required to be subsets of it.
struct WdFormula {
  Formula formula;
  std::string symbol = "S";
  std::size_t arity = 1;
  std::optional<std::string> guard;
};

// Positive when the symbol occurs only unnegated (or not at all), negative
// when it occurs only negated, mixed otherwise.
Polarity polarity_of(const WdFormula& wd);

bool wd_check(const Structure& structure, const WdFormula& wd, const TupleSet& interpretation);

// First satisfying interpretation of size k, searching k-subsets of the
// candidate tuples (guard tuples, or all of domain^arity lexicographically)
// in colex order.
std::optional<TupleSet> wd_solve(const Structure& structure, const WdFormula& wd, std::size_t k);

// ∀x∀y(¬S(x) ∨ ¬S(y) ∨ x = y ∨ E(x,y))
WdFormula clique_wd_formula();
// ∀x∃y(S(y) ∧ (E(x,y) ∨ x = y))
WdFormula domset_wd_formula();

}  // namespace tc
