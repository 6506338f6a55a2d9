#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "teamcheck/formula.hpp"

namespace tc {

enum class Fragment { kFirstOrder, kDependence, kInclusion, kIndependence, kMixed };

std::string_view fragment_name(Fragment fragment);

// Quantifier prefix of a prenex formula: `blocks` maximal runs of like
// quantifiers, the first of kind `lead`. Quantifier-free formulas have
// zero blocks and belong to both Σ_0 and Π_0.
struct PrefixClass {
  enum class Lead { kNone, kExists, kForall };

  Lead lead = Lead::kNone;
  std::size_t blocks = 0;

  // "Sigma_2", "Pi_1", "Sigma_0/Pi_0".
  std::string name() const;

  friend bool operator==(const PrefixClass&, const PrefixClass&) = default;
};

struct FragmentReport {
  bool has_dep = false;
  bool has_inc = false;
  bool has_indep = false;
  Fragment fragment = Fragment::kFirstOrder;
  std::optional<PrefixClass> prefix;  // empty for non-prenex formulas
  VarSet free_vars;
};

FragmentReport classify(const Formula& formula);

bool is_first_order(const Formula& formula);
// No inclusion or independence atoms: FO(dep), hence downward closed.
bool is_downward_closed(const Formula& formula);
// Literals and inclusion atoms only.
bool is_inclusion_fragment(const Formula& formula);

}  // namespace tc
