#include "teamcheck/verify.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "teamcheck/circuit.hpp"
#include "teamcheck/classify.hpp"
#include "teamcheck/error.hpp"
#include "teamcheck/evaluator.hpp"
#include "teamcheck/generators.hpp"
#include "teamcheck/graph.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/wt_solver.hpp"

namespace tc {

std::string_view status_name(CaseStatus status) {
  switch (status) {
    case CaseStatus::kPass: return "PASS";
    case CaseStatus::kFail: return "FAIL";
    case CaseStatus::kDiscrepancy: return "DISCREPANCY";
  }
  return "?";
}

std::size_t Report::count(CaseStatus status) const {
  std::size_t c = 0;
  for (const auto& r : cases) c += r.status == status;
  return c;
}

std::string Report::summary() const {
  return "suite " + suite + ": " + std::to_string(cases.size()) + " cases, " +
         std::to_string(count(CaseStatus::kPass)) + " pass, " +
         std::to_string(count(CaseStatus::kFail)) + " fail, " +
         std::to_string(count(CaseStatus::kDiscrepancy)) + " discrepancies";
}

std::string Report::render() const {
  std::string out;
  for (const auto& c : cases) {
    out += c.id;
    out += ' ';
    out += status_name(c.status);
    if (!c.detail.empty()) out += " " + c.detail;
    out += '\n';
  }
  return out + summary() + "\n";
}

namespace {

using CaseFn = std::function<CaseResult(std::size_t)>;

// Runs cases in parallel; results stay in index order. An exception inside
// a case fails that case.
std::vector<CaseResult> run_cases(std::size_t count, unsigned jobs, const CaseFn& fn) {
  std::vector<CaseResult> out(count);
  auto one = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      out[i] = {"case" + std::to_string(i), CaseStatus::kFail, std::string("error: ") + e.what()};
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < jobs; ++j)
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) one(i);
    });
  for (auto& t : threads) t.join();
  return out;
}

std::string case_id(std::string_view prefix, std::size_t i) {
  std::string num = std::to_string(i);
  if (num.size() < 4) num.insert(0, 4 - num.size(), '0');
  return std::string(prefix) + num;
}

std::string rows_text(const Team& team) {
  std::string out;
  for (const auto& r : team.rows()) {
    if (!out.empty()) out += ' ';
    out += '(';
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(r[i]);
    }
    out += ')';
  }
  return out.empty() ? "{}" : out;
}

CaseResult verdict(std::string id, std::vector<std::string> failures, std::string detail) {
  CaseResult r{std::move(id), CaseStatus::kPass, std::move(detail)};
  if (!failures.empty()) {
    r.status = CaseStatus::kFail;
    for (const auto& f : failures) r.detail += " [" + f + "]";
  }
  return r;
}

// Upper bound on the work of the reference evaluator: covers of m rows cost
// 3^m, an existential step (2^n - 1)^m.
double reference_cost(const Formula& f, double m, double n) {
  if (m <= 0) return 1;
  switch (f.op()) {
    case Op::kAnd:
      return reference_cost(f.left(), m, n) + reference_cost(f.right(), m, n);
    case Op::kOr:
      return std::pow(3.0, m) * (reference_cost(f.left(), m, n) + reference_cost(f.right(), m, n));
    case Op::kExists:
      return std::pow(std::pow(2.0, n) - 1, m) * reference_cost(f.body(), m * n, n);
    case Op::kForall:
      return reference_cost(f.body(), m * n, n);
    default:
      return m;
  }
}

constexpr double kReferenceBudget = 1e9;

std::vector<Team> subteams(const Team& team) {
  std::vector<Team> out;
  const auto& rows = team.rows();
  for (std::uint32_t s = 0; s < (1u << rows.size()); ++s) {
    std::vector<Tuple> pick;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (s >> i & 1) pick.push_back(rows[i]);
    out.emplace_back(team.domain(), std::move(pick));
  }
  return out;
}

// ---------------------------------------------------------------------------

const Fragment kFragments[] = {Fragment::kFirstOrder, Fragment::kDependence,
                               Fragment::kInclusion, Fragment::kIndependence};

CaseResult closure_case(const VerifyOptions& o, std::size_t i) {
  auto rng = Rng::for_case(o.seed, "closure", i);
  const Fragment fragment = kFragments[i % 4];
  const std::size_t n = rng.between(1, 4);
  Structure a = random_structure(rng, n);
  // u never occurs in the formulas; it is there for the locality check.
  Team team = random_team(rng, n, {"u", "x", "y"}, 4);
  // The empty team is checked on its own below.
  while (team.empty()) team = random_team(rng, n, {"u", "x", "y"}, 4);
  FormulaShape shape;
  shape.fragment = fragment;
  shape.max_size = 9;
  std::optional<Formula> phi;
  for (int attempt = 0; !phi; ++attempt) {
    Formula f = random_formula(rng, shape);
    if (reference_cost(f, double(team.size()), double(n)) <= kReferenceBudget) {
      phi = f;
    } else if (attempt % 20 == 19 && !team.empty()) {
      auto rows = team.rows();
      rows.pop_back();
      team = Team(team.domain(), std::move(rows));
    }
  }
  const auto ref = EvalOptions::reference();
  std::vector<std::string> failures;

  if (!eval(a, Team(team.domain()), *phi, ref) || !eval(a, Team(team.domain()), *phi))
    failures.push_back("empty team");

  auto subs = subteams(team);
  std::vector<char> sat(subs.size());
  for (std::size_t s = 0; s < subs.size(); ++s) {
    sat[s] = eval(a, subs[s], *phi, ref);
    if (eval(a, subs[s], *phi) != bool(sat[s])) failures.push_back("production/reference");
  }
  const bool whole = sat.back();

  if (eval(a, restrict_to(team, free_vars(*phi)), *phi, ref) != whole) failures.push_back("locality");

  if (fragment == Fragment::kFirstOrder) {
    bool rows_ok = true;
    for (const auto& s : team.assignments()) rows_ok = rows_ok && eval_fo_tarski(a, s, *phi);
    if (rows_ok != whole) failures.push_back("flatness");
  }
  if (fragment == Fragment::kDependence) {
    for (std::size_t s = 0; s < subs.size(); ++s)
      for (std::size_t t = 0; t < subs.size(); ++t)
        if (sat[s] && (t & s) == t && !sat[t]) failures.push_back("downward closure");
  }
  if (fragment == Fragment::kInclusion) {
    for (std::size_t s = 0; s < subs.size(); ++s)
      for (std::size_t t = 0; t < subs.size(); ++t)
        if (sat[s] && sat[t] && !sat[s | t]) failures.push_back("union closure");
  }
  std::sort(failures.begin(), failures.end());
  failures.erase(std::unique(failures.begin(), failures.end()), failures.end());
  return verdict(case_id("closure-", i), failures,
                 std::string(fragment_name(fragment)) + " n=" + std::to_string(n) +
                     " |T|=" + std::to_string(team.size()) + " " + render(*phi));
}

const char* const kInclusionTemplates[] = {
    "inc(x;y)",
    "inc(x,y;y,x)",
    "R(x,y) & inc(y;x)",
    "inc(x;y) | inc(y;x)",
    "P(x) | inc(x;y)",
    "exists z (R(x,z) & inc(z;y))",
    "forall z (!R(x,z) | inc(z;y))",
    "exists z (inc(z;x) & inc(x;z))",
    "forall z exists w (w=z & inc(w;x))",
    "exists z (x=z | inc(z;y))",
    "forall z (inc(z;x) | P(z))",
    "inc(x;c) | x!=y",
};

}  // namespace

Report verify_closure(const VerifyOptions& o) {
  std::size_t count = o.cases ? o.cases : 1000;
  return {"closure", run_cases(count, o.jobs, [&](std::size_t i) { return closure_case(o, i); })};
}

Report verify_inclusion(const VerifyOptions& o) {
  struct Item {
    std::size_t tmpl;
    std::size_t n;
    Team team;
  };
  std::vector<Structure> structures;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rng = Rng::for_case(o.seed, "inclusion-structure", n);
    structures.push_back(random_structure(rng, n));
  }
  std::vector<Item> items;
  const std::vector<std::string> vars{"x", "y"};
  for (std::size_t t = 0; t < std::size(kInclusionTemplates); ++t) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t total = n * n;
      for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
        if (std::popcount(mask) > 4) continue;
        std::vector<Tuple> rows;
        for (std::size_t j = 0; j < total; ++j)
          if (mask >> j & 1) rows.push_back(assignment_tuple(n, 2, j));
        items.push_back({t, n, Team(vars, std::move(rows))});
      }
    }
  }
  EvalOptions generic;
  generic.inclusion_fixpoint = false;
  auto results = run_cases(items.size(), o.jobs, [&](std::size_t i) {
    const Item& it = items[i];
    const Structure& a = structures[it.n - 1];
    Formula phi = parse_formula(kInclusionTemplates[it.tmpl], &a.vocabulary());
    std::vector<std::string> failures;
    bool fixpoint = eval_inclusion(a, it.team, phi);
    bool search = eval(a, it.team, phi, generic);
    if (fixpoint != search) failures.push_back("eval_inclusion/eval");
    if (reference_cost(phi, double(it.team.size()), double(it.n)) <= kReferenceBudget &&
        eval(a, it.team, phi, EvalOptions::reference()) != search)
      failures.push_back("reference/eval");
    std::vector<Tuple> united;
    for (const auto& sub : subteams(it.team))
      if (eval(a, sub, phi, generic)) united.insert(united.end(), sub.rows().begin(), sub.rows().end());
    Team union_team(vars, std::move(united));
    Team maximal = max_subteam(a, it.team, phi);
    if (!(maximal == union_team)) failures.push_back("max_subteam/union");
    return verdict(case_id("inclusion-", i), failures,
                   std::string("n=") + std::to_string(it.n) + " T=" + rows_text(it.team) + " " +
                       kInclusionTemplates[it.tmpl]);
  });
  return {"inclusion", std::move(results)};
}

namespace {

struct GraphCase {
  GraphProblem problem;
  std::uint64_t mask;
  std::size_t k;
};

std::vector<GraphCase> graph_cases(std::size_t vertices, GraphProblem problem,
                                   std::vector<std::size_t> ks) {
  std::vector<GraphCase> out;
  const std::size_t pairs = vertices * (vertices - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask)
    for (auto k : ks) out.push_back({problem, mask, k});
  return out;
}

Encoding encode(GraphProblem problem, const Graph& g, std::size_t k) {
  switch (problem) {
    case GraphProblem::kClique: return encode_clique(g, k);
    case GraphProblem::kIndependentSet: return encode_indset(g, k);
    case GraphProblem::kDominatingSet: return encode_domset(g, k);
  }
  throw InputError("unknown problem");
}

struct TargetAnswer {
  bool yes;
  std::optional<Team> witness;
};

TargetAnswer solve_encoding(const Encoding& e) {
  if (e.decided) return {*e.decided, std::nullopt};
  auto w = wt_solve(e.instance);
  return {w.has_value(), w};
}

std::string graph_label(std::size_t vertices, const GraphCase& c) {
  return std::string(problem_name(c.problem)) + " n=" + std::to_string(vertices) +
         " graph=" + std::to_string(c.mask) + " k=" + std::to_string(c.k);
}

}  // namespace

Report verify_reductions(const VerifyOptions& o) {
  std::vector<GraphCase> cases;
  for (auto p : {GraphProblem::kDominatingSet, GraphProblem::kIndependentSet})
    for (auto& c : graph_cases(o.vertices, p, {1, 2, 3})) cases.push_back(c);
  for (auto& c : graph_cases(o.vertices, GraphProblem::kClique, {2, 3})) cases.push_back(c);
  auto results = run_cases(cases.size(), o.jobs, [&](std::size_t i) {
    const auto& c = cases[i];
    Graph g = graph_from_mask(o.vertices, c.mask);
    bool source = graph_brute(c.problem, g, c.k);
    auto target = solve_encoding(encode(c.problem, g, c.k));
    std::vector<std::string> failures;
    if (c.problem == GraphProblem::kClique) {
      if (source && !target.yes) failures.push_back("forward direction");
    } else if (source != target.yes) {
      failures.push_back(std::string("source ") + (source ? "yes" : "no") + ", target " +
                         (target.yes ? "yes" : "no"));
    }
    return verdict(case_id("reductions-", i), failures, graph_label(o.vertices, c));
  });
  return {"reductions", std::move(results)};
}

Report verify_clique_experiment(const VerifyOptions& o) {
  auto cases = graph_cases(o.vertices, GraphProblem::kClique, {2, 3});
  auto results = run_cases(cases.size() + 1, o.jobs, [&](std::size_t i) -> CaseResult {
    if (i == cases.size()) {
      // The 5-cycle with k = 3 has no triangle.
      Graph c5 = Graph::cycle(5);
      auto target = solve_encoding(encode_clique(c5, 3));
      bool source = graph_brute(GraphProblem::kClique, c5, 3);
      CaseResult r{"clique-c5-k3", CaseStatus::kPass, "C5 k=3 source no, target no"};
      if (target.yes && !source)
        r = {"clique-c5-k3", CaseStatus::kDiscrepancy,
             "C5 k=3 source no, target yes witness=" + rows_text(*target.witness)};
      return r;
    }
    const auto& c = cases[i];
    Graph g = graph_from_mask(o.vertices, c.mask);
    bool source = graph_brute(GraphProblem::kClique, g, c.k);
    auto target = solve_encoding(encode_clique(g, c.k));
    CaseResult r{case_id("clique-", i), CaseStatus::kPass, graph_label(o.vertices, c)};
    if (source && !target.yes) {
      r.status = CaseStatus::kFail;
      r.detail += " [forward direction]";
    } else if (!source && target.yes) {
      r.status = CaseStatus::kDiscrepancy;
      r.detail += " edges=" + std::to_string(g.edges().size()) +
                  " witness=" + (target.witness ? rows_text(*target.witness) : "?");
    }
    return r;
  });
  return {"clique-experiment", std::move(results)};
}

Report verify_circuit(const VerifyOptions& o) {
  std::size_t count = o.cases ? o.cases : 600;
  auto results = run_cases(count, o.jobs, [&](std::size_t i) {
    auto rng = Rng::for_case(o.seed, "circuit", i);
    BooleanCircuit c = random_circuit(rng, o.max_gates);
    auto inputs = c.inputs();
    std::vector<std::string> failures;
    for (std::uint32_t s = 0; s < (1u << inputs.size()); ++s) {
      std::set<std::size_t> on;
      for (std::size_t j = 0; j < inputs.size(); ++j)
        if (s >> j & 1) on.insert(inputs[j]);
      if (circuit_eval(c, on) != proof_tree_exists(c, on))
        failures.push_back("input subset " + std::to_string(s));
    }
    return verdict(case_id("circuit-", i), failures,
                   "gates=" + std::to_string(c.gate_count()) +
                       " edges=" + std::to_string(c.edges().size()) +
                       " inputs=" + std::to_string(inputs.size()));
  });
  return {"circuit", std::move(results)};
}

Report verify_wsat_inclusion(const VerifyOptions& o) {
  std::size_t count = o.cases ? o.cases : 200;
  auto results = run_cases(count, o.jobs, [&](std::size_t i) {
    auto rng = Rng::for_case(o.seed, "wsat-inclusion", i);
    PropFormula psi = random_gamma(rng, 2, rng.between(2, 6), Polarity::kPositive, 4);
    std::vector<std::string> failures;
    const std::size_t vars = psi.var_count();
    for (std::size_t k = 1; k <= vars; ++k) {
      bool source = wsat_brute(psi, k);
      auto target = solve_encoding(encode_wsat(psi, k));
      if (source != target.yes) failures.push_back("k=" + std::to_string(k));
    }
    return verdict(case_id("wsat-inclusion-", i), failures,
                   "|I|=" + std::to_string(vars) + " " + render(psi));
  });
  return {"wsat-inclusion", std::move(results)};
}

Report verify_wsat_theta(const VerifyOptions& o) {
  std::size_t per = o.cases ? o.cases : 200;
  struct Kind {
    std::size_t t;
    Polarity polarity;
  };
  const Kind kinds[] = {{1, Polarity::kNegative}, {3, Polarity::kNegative}, {2, Polarity::kPositive}};
  auto results = run_cases(per * 3, o.jobs, [&](std::size_t i) {
    const Kind& kind = kinds[i / per];
    auto rng = Rng::for_case(o.seed, "wsat-theta", i);
    PropFormula psi = random_gamma(rng, kind.t, rng.between(2, 6), kind.polarity,
                                   kind.t == 3 ? 2 : 3);
    Structure a = build_syntax_circuit(psi, kind.t);
    WdFormula theta = theta_formula(kind.t, kind.polarity);
    std::vector<std::string> failures;
    const std::size_t vars = psi.var_count();
    for (std::size_t k = 1; k <= vars; ++k)
      if (wsat_brute(psi, k) != wd_solve(a, theta, k).has_value())
        failures.push_back("k=" + std::to_string(k));
    return verdict(case_id("wsat-theta-", i), failures,
                   "t=" + std::to_string(kind.t) + " " +
                       std::string(polarity_name(kind.polarity)) + " " + render(psi));
  });
  return {"wsat-theta", std::move(results)};
}

Report verify_sentences(const VerifyOptions& o) {
  std::size_t per = o.cases ? o.cases : 100;
  auto results = run_cases(per * 4, o.jobs, [&](std::size_t i) {
    const Fragment fragment = kFragments[i / per];
    auto rng = Rng::for_case(o.seed, "sentences", i);
    const std::size_t n = rng.between(1, 4);
    Structure a = random_structure(rng, n);
    FormulaShape shape;
    shape.fragment = fragment;
    shape.sentence = true;
    shape.max_size = 6;
    Formula phi = random_formula(rng, shape);
    std::vector<std::string> failures;
    const bool holds = check_sentence(a, phi);
    if (!wt_solve_sentence(a, phi, 0)) failures.push_back("k=0");
    if (wt_solve_sentence(a, phi, 1) != holds) failures.push_back("k=1");
    for (std::size_t k = 2; k <= 3; ++k)
      if (wt_solve_sentence(a, phi, k)) failures.push_back("k=" + std::to_string(k));
    WtSolveOptions generic;
    generic.fast_path = false;
    for (std::size_t k = 0; k <= 3; ++k) {
      bool found = wt_search({a, phi, k}, generic).witness.has_value();
      if (found != wt_solve_sentence(a, phi, k)) failures.push_back("generic k=" + std::to_string(k));
    }
    if (reference_cost(phi, 1, double(n)) <= kReferenceBudget &&
        eval(a, Team::singleton_empty(), phi, EvalOptions::reference()) != holds)
      failures.push_back("reference");
    return verdict(case_id("sentences-", i), failures,
                   std::string(fragment_name(fragment)) + " n=" + std::to_string(n) + " " +
                       (holds ? "true " : "false ") + render(phi));
  });
  return {"sentences", std::move(results)};
}

Report verify_fo_fastpath(const VerifyOptions& o) {
  std::size_t count = o.cases ? o.cases : 200;
  auto results = run_cases(count, o.jobs, [&](std::size_t i) {
    auto rng = Rng::for_case(o.seed, "fo-fastpath", i);
    const std::size_t n = rng.between(1, 5);
    Structure a = random_structure(rng, n);
    FormulaShape shape;
    shape.fragment = Fragment::kFirstOrder;
    shape.max_size = 7;
    Formula phi = random_formula(rng, shape);
    WtSolveOptions generic;
    generic.fast_path = false;
    generic.eval.flat_first_order = false;
    std::vector<std::string> failures;
    auto fv = free_vars(phi);
    for (std::size_t k = 0; k <= n * n; ++k) {
      bool counted = wt_solve_fo(a, phi, k);
      auto found = wt_search({a, phi, k}, generic).witness;
      if (counted != found.has_value()) failures.push_back("k=" + std::to_string(k));
      if (found) {
        VarSet dom(found->domain().begin(), found->domain().end());
        if (found->size() != k || dom != fv || !eval(a, *found, phi))
          failures.push_back("witness k=" + std::to_string(k));
      }
    }
    return verdict(case_id("fo-fastpath-", i), failures,
                   "n=" + std::to_string(n) + " " + render(phi));
  });
  return {"fo-fastpath", std::move(results)};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "closure",        "inclusion",  "reductions", "clique-experiment", "circuit",
      "wsat-inclusion", "wsat-theta", "sentences",  "fo-fastpath"};
  return names;
}

Report run_suite(std::string_view name, const VerifyOptions& options) {
  if (name == "closure") return verify_closure(options);
  if (name == "inclusion") return verify_inclusion(options);
  if (name == "reductions") return verify_reductions(options);
  if (name == "clique-experiment") return verify_clique_experiment(options);
  if (name == "circuit") return verify_circuit(options);
  if (name == "wsat-inclusion") return verify_wsat_inclusion(options);
  if (name == "wsat-theta") return verify_wsat_theta(options);
  if (name == "sentences") return verify_sentences(options);
  if (name == "fo-fastpath") return verify_fo_fastpath(options);
  throw InputError("unknown suite '" + std::string(name) + "'");
}

}  // namespace tc
