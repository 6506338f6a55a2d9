#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "teamcheck/graph.hpp"
#include "teamcheck/prop.hpp"
#include "teamcheck/structure.hpp"
#include "teamcheck/wt_solver.hpp"

namespace tc {

inline constexpr std::string_view kCliqueFormula = "E(x,y) & x!=y & inc(y;x) & inc(x;y)";
inline constexpr std::string_view kDomsetFormula = "forall x exists y (inc(y;z) & (E(x,y) | x=y))";
inline constexpr std::string_view kIndsetFormula =
    "forall y (N(x) & (!P(y) | !I(x,y) | dep(y;x)))";

// An encoded instance. When a parameter guard answered the source question
// directly, `decided` holds the answer and `instance` is a one-element
// instance with the same answer (x=x or x!=x with k' = 1).
struct Encoding {
  WtInstance instance;
  std::optional<bool> decided;
  std::string note;
};

// k' = k^2 - k over the graph structure. k = 0 and k = 1 are decided
// directly, as is k > |V|.
Encoding encode_clique(const Graph& graph, std::size_t k);
// k' = k, free variable z. k = 0 and k > |V| are decided directly.
Encoding encode_domset(const Graph& graph, std::size_t k);
// k' = k over indset_structure(graph), free variable x.
Encoding encode_indset(const Graph& graph, std::size_t k);

// Domain V ⊎ E: vertices first (labels v<i>), then edges in order (labels
// e<u>_<v>). N marks vertices, P marks edges, I links an edge to both ends.
Structure indset_structure(const Graph& graph);

// Least t >= 0 with p ∈ Γ_{t,1}, if any.
std::optional<std::size_t> syntax_depth(const PropFormula& p);

// Syntax circuit of p layered to depth t (default: syntax_depth(p)).
// Elements: one per variable (labels x<id>, ascending) followed by the gates
// in preorder (labels g<j>). E(a, b) holds when b is an immediate
// subformula of a; I holds the variables; the constant o is the root.
Structure build_syntax_circuit(const PropFormula& p, std::optional<std::size_t> depth = {});

// θ(S) for depth t: ∀x1(¬E(o,x1) ∨ ∃x2(E(x1,x2) ∧ ... I(xt) ∧ ±S(xt))).
// Solutions are guarded by I.
WdFormula theta_formula(std::size_t t, Polarity polarity);

// θ(S) for even t with S(xt) replaced by inc(xt; z).
Formula phi_t_inclusion(std::size_t t);

// Syntax circuit of a positive p at the least even depth, with
// phi_t_inclusion. k = 0 and k > #vars are decided directly.
Encoding encode_wsat(const PropFormula& p, std::size_t k);

// Some assignment setting exactly k of p's variables true satisfies p.
bool wsat_brute(const PropFormula& p, std::size_t k);
std::optional<std::set<unsigned>> wsat_witness(const PropFormula& p, std::size_t k);

}  // namespace tc
