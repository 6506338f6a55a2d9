#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamcheck/verify.hpp"

namespace {

using tc::CaseStatus;
using tc::Report;

constexpr double kMaxSeconds = 600;

struct Outcome {
  bool pass;
  std::string detail;
};

std::size_t count_if_detail(const Report& r, std::string_view prefix, CaseStatus status) {
  std::size_t n = 0;
  for (const auto& c : r.cases) n += c.status == status && c.detail.rfind(prefix, 0) == 0;
  return n;
}

std::size_t total_with_detail(const Report& r, std::string_view prefix) {
  std::size_t n = 0;
  for (const auto& c : r.cases) n += c.detail.rfind(prefix, 0) == 0;
  return n;
}

// At least `min_cases` cases, none failing.
Outcome clean(const Report& r, std::size_t min_cases) {
  auto fails = r.count(CaseStatus::kFail);
  bool ok = r.cases.size() >= min_cases && fails == 0;
  return {ok, std::to_string(r.cases.size()) + " cases (need >= " + std::to_string(min_cases) +
                  "), " + std::to_string(fails) + " failures"};
}

Outcome graph_problem(const Report& r, std::string_view problem, std::size_t expected) {
  auto total = total_with_detail(r, problem);
  auto fails = count_if_detail(r, problem, CaseStatus::kFail);
  bool ok = total == expected && fails == 0;
  return {ok, std::to_string(total) + " (graph, k) pairs (need " + std::to_string(expected) +
                  "), " + std::to_string(fails) + " disagreements"};
}

void write_discrepancies(const Report& r, const std::string& path) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : r.cases)
    if (c.status == CaseStatus::kDiscrepancy) out.push_back({{"id", c.id}, {"detail", c.detail}});
  std::ofstream(path) << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  tc::VerifyOptions options;
  std::string discrepancy_file = "clique_discrepancies.json";
  CLI::App app{"Acceptance criteria"};
  app.add_option("--seed", options.seed);
  app.add_option("--jobs", options.jobs);
  app.add_option("--discrepancies", discrepancy_file, "Clique experiment findings (JSON)");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    std::string name;
    std::vector<std::string> suites;
    std::function<Outcome(const std::vector<Report>&)> judge;
  };

  const std::size_t all_graphs = 1024;
  std::vector<Criterion> criteria{
      {1, "closure properties", {"closure"}, [](auto& r) { return clean(r[0], 500); }},
      {2, "inclusion fixed point", {"inclusion"}, [](auto& r) { return clean(r[0], 2000); }},
      {3, "dominating set encoding", {"reductions"},
       [&](auto& r) { return graph_problem(r[0], "domset", all_graphs * 3); }},
      {4, "independent set encoding", {"reductions"},
       [&](auto& r) { return graph_problem(r[0], "indset", all_graphs * 3); }},
      {5, "clique encoding", {"reductions", "clique-experiment"},
       [&](auto& r) {
         auto forward = graph_problem(r[0], "clique", all_graphs * 2);
         write_discrepancies(r[1], discrepancy_file);
         bool c5 = false;
         for (const auto& c : r[1].cases)
           c5 = c5 || (c.id == "clique-c5-k3" && c.status == CaseStatus::kDiscrepancy);
         forward.detail += "; experiment: " + std::to_string(r[1].count(CaseStatus::kDiscrepancy)) +
                           " discrepancies, C5/k=3 " + (c5 ? "confirmed" : "refuted") + ", report " +
                           discrepancy_file;
         forward.pass = forward.pass && r[1].count(CaseStatus::kFail) == 0;
         return forward;
       }},
      {6, "weighted satisfiability, inclusion side", {"wsat-inclusion"},
       [](auto& r) { return clean(r[0], 200); }},
      {7, "weighted satisfiability, negative theta", {"wsat-theta"},
       [](auto& r) {
         auto t1 = total_with_detail(r[0], "t=1 negative");
         auto t3 = total_with_detail(r[0], "t=3 negative");
         auto fails = r[0].count(CaseStatus::kFail);
         return Outcome{t1 >= 200 && t3 >= 200 && fails == 0,
                        std::to_string(t1) + " formulas at t=1, " + std::to_string(t3) +
                            " at t=3 (need >= 200 each), " + std::to_string(fails) + " failures"};
       }},
      {8, "circuit proof trees", {"circuit"}, [](auto& r) { return clean(r[0], 500); }},
      {9, "sentences", {"sentences"}, [](auto& r) { return clean(r[0], 400); }},
      {10, "first-order counting", {"fo-fastpath"}, [](auto& r) { return clean(r[0], 200); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::vector<Report> reports;
    Outcome o{false, ""};
    try {
      for (const auto& s : c.suites) reports.push_back(tc::run_suite(s, options));
      o = c.judge(reports);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    if (secs.count() > kMaxSeconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    all = all && o.pass;
    std::printf("criterion %2d %s  %s: %s (%.2fs)\n", c.id, o.pass ? "PASS" : "FAIL",
                c.name.c_str(), o.detail.c_str(), secs.count());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
