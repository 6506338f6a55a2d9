#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "teamcheck/formula.hpp"
#include "teamcheck/structure.hpp"
#include "teamcheck/team.hpp"

namespace tc {

// Search shortcuts of the team evaluator. Each one is sound for the
// fragment it is applied to; reference() switches all of them off and
// leaves the plain lax search (covers, nonempty value sets).
struct EvalOptions {
  // FO subformulas are checked row by row.
  bool flat_first_order = true;
  // Downward-closed subformulas use disjoint splits and singleton witnesses.
  bool strict_downward = true;
  // The input team is projected onto the free variables first.
  bool locality = true;
  // Rows failing the classical skeleton of a subformula (team atoms read
  // as true) are discarded before any search.
  bool prune = true;
  // Union-closed subformulas (literals and inclusion atoms only) are
  // decided through their maximal subteam.
  bool inclusion_fixpoint = true;
  // Memo entries per top-level call. Once full, lookups continue but
  // nothing new is stored.
  std::size_t max_cache = std::size_t{1} << 20;

  static EvalOptions reference();
};

struct EvalStats {
  std::uint64_t team_checks = 0;
  std::uint64_t memo_hits = 0;
  std::size_t memo_entries = 0;
};

// A formula compiled against one structure and one input column layout.
// Rows are tuples aligned with domain(). Instances keep row-level caches
// between calls and must not be shared across threads; the team-level memo
// is rebuilt on every call.
class Evaluator {
 public:
  Evaluator(const Structure& structure, const Formula& formula,
            std::vector<std::string> domain, EvalOptions options = {});
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;
  ~Evaluator();

  const std::vector<std::string>& domain() const;
  const Formula& formula() const;

  bool satisfies(std::span<const Tuple> rows);
  bool satisfies(const Team& team);

  // Largest subteam satisfying the formula. Literals and inclusion atoms only.
  std::vector<Tuple> max_subteam(std::span<const Tuple> rows);

  // Classical truth of a first-order formula under one row.
  bool tarski(const Tuple& row);
  // Classical truth with dep/inc/indep atoms read as true. Every row of a
  // satisfying team passes this test.
  bool must(const Tuple& row);

  const EvalStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// A,T |= φ under lax team semantics.
bool eval(const Structure& structure, const Team& team, const Formula& formula,
          const EvalOptions& options = {});

// A |=_s φ for first-order φ.
bool eval_fo_tarski(const Structure& structure, const Assignment& assignment,
                    const Formula& formula);

// Maximal subteam of `team` satisfying an FO(⊆) formula.
Team max_subteam(const Structure& structure, const Team& team, const Formula& formula);

// A,T |= φ for FO(⊆) φ, decided as max_subteam(A,T,φ) == T.
bool eval_inclusion(const Structure& structure, const Team& team, const Formula& formula);

// A,{∅} |= φ for a sentence φ.
bool check_sentence(const Structure& structure, const Formula& sentence,
                    const EvalOptions& options = {});

}  // namespace tc
