#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tc {

enum class CaseStatus { kPass, kFail, kDiscrepancy };

std::string_view status_name(CaseStatus status);

struct CaseResult {
  std::string id;
  CaseStatus status = CaseStatus::kPass;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<CaseResult> cases;

  std::size_t count(CaseStatus status) const;
  // Discrepancies are findings, not failures.
  bool passed() const { return count(CaseStatus::kFail) == 0; }
  std::string summary() const;
  // One line per case followed by the summary line.
  std::string render() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  // Number of random cases; 0 selects the suite's default.
  std::size_t cases = 0;
  // Graph suites enumerate every graph on exactly this many vertices.
  std::size_t vertices = 5;
  std::size_t max_gates = 6;
};

// closure, inclusion, reductions, clique-experiment, circuit,
// wsat-inclusion, wsat-theta, sentences, fo-fastpath
const std::vector<std::string>& suite_names();

// Throws InputError for an unknown suite name.
Report run_suite(std::string_view name, const VerifyOptions& options = {});

Report verify_closure(const VerifyOptions& options);
Report verify_inclusion(const VerifyOptions& options);
Report verify_reductions(const VerifyOptions& options);
Report verify_clique_experiment(const VerifyOptions& options);
Report verify_circuit(const VerifyOptions& options);
Report verify_wsat_inclusion(const VerifyOptions& options);
Report verify_wsat_theta(const VerifyOptions& options);
Report verify_sentences(const VerifyOptions& options);
Report verify_fo_fastpath(const VerifyOptions& options);

}  // namespace tc
