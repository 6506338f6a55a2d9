#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamcheck/classify.hpp"
#include "teamcheck/error.hpp"
#include "teamcheck/evaluator.hpp"
#include "teamcheck/generators.hpp"
#include "teamcheck/graph.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/verify.hpp"
#include "teamcheck/wt_solver.hpp"

namespace {

using json = nlohmann::json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;

struct Globals {
  std::string fast_path = "auto";
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  bool json = false;
  std::size_t max_cache = std::size_t{1} << 20;
};

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw tc::InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Formula arguments are literal text, `@file`, or `-` for stdin.
std::string formula_text(const std::string& arg) {
  if (arg == "-") return read_source("-");
  if (!arg.empty() && arg.front() == '@') return read_source(arg.substr(1));
  return arg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw tc::InputError("cannot write '" + path + "'");
  out << text;
}

tc::EvalOptions eval_options(const Globals& g) {
  tc::EvalOptions o;
  o.max_cache = g.max_cache;
  return o;
}

tc::WtSolveOptions solve_options(const Globals& g) {
  tc::WtSolveOptions o;
  o.fast_path = g.fast_path == "auto";
  o.eval = eval_options(g);
  o.jobs = g.jobs;
  return o;
}

json team_json(const tc::Team& team, const tc::Structure& a) {
  json rows = json::array();
  for (const auto& row : team.rows()) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[team.domain()[i]] = a.label(row[i]);
    rows.push_back(r);
  }
  return {{"vars", team.domain()}, {"rows", rows}};
}

int cmd_check(const Globals& g, const std::string& structure_file, const std::string& formula,
              const std::string& team_file) {
  auto a = tc::parse_structure(read_source(structure_file));
  auto phi = tc::parse_formula(formula_text(formula), &a.vocabulary());
  auto fv = tc::free_vars(phi);
  auto team = tc::parse_team(read_source(team_file), a, fv);
  for (const auto& v : fv)
    if (!team.column(v)) throw tc::InputError("team has no column for free variable '" + v + "'");
  const bool sat = tc::eval(a, team, phi, eval_options(g));
  auto fragment = tc::fragment_name(tc::classify(phi).fragment);
  if (g.json) {
    std::cout << json{{"verdict", sat ? "SAT" : "UNSAT"},
                      {"fragment", fragment},
                      {"rows", team.size()}}
                     .dump()
              << "\n";
  } else {
    std::cout << (sat ? "SAT" : "UNSAT") << "\n";
    std::cout << "fragment " << fragment << "\n";
  }
  return sat ? kYes : kNo;
}

int cmd_solve(const Globals& g, const std::string& structure_file, const std::string& formula,
              std::size_t k) {
  auto a = tc::parse_structure(read_source(structure_file));
  auto phi = tc::parse_formula(formula_text(formula), &a.vocabulary());
  auto result = tc::wt_search({a, phi, k}, solve_options(g));
  const bool sat = result.witness.has_value();
  if (g.json) {
    json out{{"verdict", sat ? "SAT" : "UNSAT"},
             {"k", k},
             {"path", result.path},
             {"candidates", result.candidates}};
    if (sat) out["witness"] = team_json(*result.witness, a);
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (sat ? "SAT" : "UNSAT") << "\n";
    if (sat) std::cout << tc::render_team(*result.witness, a);
  }
  return sat ? kYes : kNo;
}

int cmd_reduce(const Globals& g, const std::string& problem, const std::string& input,
               std::size_t k, const std::string& out_prefix) {
  tc::Encoding e = [&] {
    if (problem == "wsat") return tc::encode_wsat(tc::parse_prop(read_source(input)), k);
    auto graph = tc::parse_graph(read_source(input));
    switch (tc::parse_problem(problem)) {
      case tc::GraphProblem::kClique: return tc::encode_clique(graph, k);
      case tc::GraphProblem::kDominatingSet: return tc::encode_domset(graph, k);
      case tc::GraphProblem::kIndependentSet: return tc::encode_indset(graph, k);
    }
    throw tc::InputError("unknown problem '" + problem + "'");
  }();
  const auto structure = tc::render_structure(e.instance.structure);
  const auto formula = tc::render(e.instance.formula);
  if (!out_prefix.empty()) {
    write_file(out_prefix + ".structure", structure);
    write_file(out_prefix + ".formula", formula + "\n");
  }
  if (g.json) {
    json out{{"problem", problem}, {"k", k}, {"k_prime", e.instance.k}, {"formula", formula}};
    if (e.decided) out["decided"] = *e.decided;
    if (!e.note.empty()) out["note"] = e.note;
    if (out_prefix.empty()) out["structure"] = structure;
    std::cout << out.dump() << "\n";
    return kYes;
  }
  std::cout << "formula " << formula << "\n";
  std::cout << "k' " << e.instance.k << "\n";
  if (e.decided) std::cout << "decided " << (*e.decided ? "yes" : "no") << "\n";
  if (!e.note.empty()) std::cout << "note " << e.note << "\n";
  if (out_prefix.empty()) std::cout << structure;
  return kYes;
}

int cmd_verify(const Globals& g, const std::string& suite, tc::VerifyOptions options,
               const std::string& report_file) {
  options.seed = g.seed;
  options.jobs = g.jobs;
  std::vector<std::string> names;
  if (suite == "all") {
    names = tc::suite_names();
  } else {
    names.push_back(suite);
  }
  bool ok = true;
  std::string text;
  json reports = json::array();
  for (const auto& name : names) {
    auto report = tc::run_suite(name, options);
    ok = ok && report.passed();
    text += report.render();
    json cases = json::array();
    for (const auto& c : report.cases)
      cases.push_back({{"id", c.id}, {"status", tc::status_name(c.status)}, {"detail", c.detail}});
    reports.push_back({{"suite", report.suite},
                       {"pass", report.count(tc::CaseStatus::kPass)},
                       {"fail", report.count(tc::CaseStatus::kFail)},
                       {"discrepancy", report.count(tc::CaseStatus::kDiscrepancy)},
                       {"cases", cases}});
    if (!report_file.empty() && !g.json) std::cout << report.summary() << "\n";
  }
  const std::string body = g.json ? reports.dump(2) + "\n" : text;
  if (report_file.empty()) {
    std::cout << body;
  } else {
    write_file(report_file, body);
  }
  return ok ? kYes : kNo;
}

struct BenchRange {
  std::size_t n_min = 0, n_max = 0, k_min = 0, k_max = 0;
  unsigned repeat = 1;
};

template <class F>
std::pair<bool, double> timed(unsigned repeat, F f) {
  bool verdict = false;
  double best = 0;
  for (unsigned r = 0; r < std::max(1u, repeat); ++r) {
    auto start = std::chrono::steady_clock::now();
    verdict = f();
    std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
    if (r == 0 || d.count() < best) best = d.count();
  }
  return {verdict, best};
}

int cmd_bench(const Globals& g, const std::string& family, const BenchRange& range,
              const std::string& out_file) {
  if (family != "domset" && family != "wsat")
    throw tc::InputError("unknown bench family '" + family + "'");
  std::ostringstream csv;
  csv << "family,n,k,path,verdict,wall_ms\n";
  auto row = [&](std::size_t n, std::size_t k, const char* path, std::pair<bool, double> r) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.second);
    csv << family << ',' << n << ',' << k << ',' << path << ',' << (r.first ? "yes" : "no") << ','
        << ms << '\n';
  };
  tc::WtSolveOptions fast = solve_options(g);
  fast.fast_path = true;
  tc::WtSolveOptions generic = fast;
  generic.fast_path = false;
  for (std::size_t n = range.n_min; n <= range.n_max && range.n_min <= range.n_max; ++n) {
    auto rng = tc::Rng::for_case(g.seed, "bench-" + family, n);
    if (family == "domset") {
      tc::Graph graph(n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (rng.chance(35)) graph.add_edge(u, v);
      for (std::size_t k = range.k_min; k <= range.k_max; ++k) {
        auto e = tc::encode_domset(graph, k);
        row(n, k, "brute", timed(range.repeat, [&] {
              return tc::graph_brute(tc::GraphProblem::kDominatingSet, graph, k);
            }));
        row(n, k, "fast", timed(range.repeat, [&] {
              return tc::wt_search(e.instance, fast).witness.has_value();
            }));
        row(n, k, "generic", timed(range.repeat, [&] {
              return tc::wt_search(e.instance, generic).witness.has_value();
            }));
      }
    } else {
      auto psi = tc::random_gamma(rng, 2, n, tc::Polarity::kPositive);
      for (std::size_t k = range.k_min; k <= range.k_max; ++k) {
        auto e = tc::encode_wsat(psi, k);
        row(n, k, "brute", timed(range.repeat, [&] { return tc::wsat_brute(psi, k); }));
        row(n, k, "fast", timed(range.repeat, [&] {
              return e.decided ? *e.decided : tc::wt_search(e.instance, fast).witness.has_value();
            }));
        row(n, k, "generic", timed(range.repeat, [&] {
              return e.decided ? *e.decided
                               : tc::wt_search(e.instance, generic).witness.has_value();
            }));
      }
    }
  }
  if (out_file.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out_file, csv.str());
  }
  return kYes;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("TEAMCHECK_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    auto v = std::stoull(env, &used);
    if (used != std::string_view(env).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw tc::InputError(std::string("TEAMCHECK_SEED is not a number: '") + env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  try {
    g.seed = default_seed();
  } catch (const tc::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"Team semantics model checker and witness search"};
  app.require_subcommand(1);
  app.add_option("--fast-path", g.fast_path, "Fragment-specific solver shortcuts")
      ->check(CLI::IsMember({"auto", "off"}));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "Seed for random corpora (default $TEAMCHECK_SEED or 1)");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--max-cache", g.max_cache, "Evaluator cache entries");

  std::string structure_file, formula, team_file, problem, input, out, suite, family;
  std::size_t k = 0;

  auto* check = app.add_subcommand("check", "Decide A,T |= phi");
  check->add_option("structure", structure_file)->required();
  check->add_option("formula", formula, "Formula text, @file or -")->required();
  check->add_option("team", team_file)->required();

  auto* solve = app.add_subcommand("solve", "Find a team of size k satisfying phi");
  solve->add_option("structure", structure_file)->required();
  solve->add_option("formula", formula, "Formula text, @file or -")->required();
  solve->add_option("k", k)->required();

  auto* reduce = app.add_subcommand("reduce", "Encode a problem instance");
  reduce->add_option("problem", problem)
      ->required()
      ->check(CLI::IsMember({"clique", "domset", "indset", "wsat"}));
  reduce->add_option("input", input, "Graph or propositional formula file")->required();
  reduce->add_option("k", k)->required();
  reduce->add_option("--out", out, "Write <out>.structure and <out>.formula");

  tc::VerifyOptions vopts;
  std::string report_file;
  auto* verify = app.add_subcommand("verify", "Run an oracle suite");
  std::vector<std::string> suites = tc::suite_names();
  suites.push_back("all");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suites));
  verify->add_option("--cases", vopts.cases, "Random cases (0 = suite default)");
  verify->add_option("--vertices", vopts.vertices, "Graph size for graph suites")
      ->check(CLI::Range(std::size_t{1}, std::size_t{6}));
  verify->add_option("--max-gates", vopts.max_gates, "Circuit size bound")
      ->check(CLI::Range(std::size_t{1}, std::size_t{12}));
  verify->add_option("--report", report_file, "Write the report here");

  BenchRange range;
  auto* bench = app.add_subcommand("bench", "Timing table per solver path");
  bench->add_option("family", family)->required()->check(CLI::IsMember({"domset", "wsat"}));
  bench->add_option("--n-min", range.n_min)->default_val(6);
  bench->add_option("--n-max", range.n_max)->default_val(10);
  bench->add_option("--k-min", range.k_min)->default_val(1);
  bench->add_option("--k-max", range.k_max)->default_val(3);
  bench->add_option("--repeat", range.repeat)->default_val(1);
  bench->add_option("--out", out, "CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(g, structure_file, formula, team_file);
    if (*solve) return cmd_solve(g, structure_file, formula, k);
    if (*reduce) return cmd_reduce(g, problem, input, k, out);
    if (*verify) return cmd_verify(g, suite, vopts, report_file);
    if (*bench) return cmd_bench(g, family, range, out);
  } catch (const tc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const tc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const tc::EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
