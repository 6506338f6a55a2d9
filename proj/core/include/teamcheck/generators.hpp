#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "teamcheck/circuit.hpp"
#include "teamcheck/classify.hpp"
#include "teamcheck/formula.hpp"
#include "teamcheck/prop.hpp"
#include "teamcheck/structure.hpp"
#include "teamcheck/team.hpp"

namespace tc {

// Seeded 64-bit generator (std::mt19937_64). Draws use rejection sampling
// rather than std::uniform_int_distribution, whose output is not fixed
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Independent stream for case `index` of the suite tagged `tag`.
  static Rng for_case(std::uint64_t seed, std::string_view tag, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

// Vocabulary P/1, R/2 and constant c; each tuple present with probability
// `density` percent.
Structure random_structure(Rng& rng, std::size_t n, unsigned density = 50);

// Distinct random rows over `vars`, at most `max_rows` of them (and at
// most the number of assignments).
Team random_team(Rng& rng, std::size_t n, const std::vector<std::string>& vars,
                 std::size_t max_rows);

struct FormulaShape {
  Fragment fragment = Fragment::kFirstOrder;
  std::vector<std::string> free_vars = {"x", "y"};  // variables that may occur free
  std::size_t max_quantifier_depth = 2;
  std::size_t max_size = 9;  // connective and atom nodes
  bool sentence = false;     // start with a quantifier block binding everything
};

// Random NNF formula over P/1, R/2, c. Formulas of a non-FO fragment
// contain at least one atom of that fragment and no atom of another.
Formula random_formula(Rng& rng, const FormulaShape& shape);

// Random formula in Γ_{t,1} (t >= 1) over variables 1..vars, already
// layered to depth t; all literals positive or all negative.
PropFormula random_gamma(Rng& rng, std::size_t t, std::size_t vars, Polarity polarity,
                         std::size_t max_fan_out = 3);

// Random monotone circuit with 1..max_gates gates; gate ids are in
// topological order and the output is the last gate.
BooleanCircuit random_circuit(Rng& rng, std::size_t max_gates);

}  // namespace tc
