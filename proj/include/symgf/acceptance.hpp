#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace symgf::acceptance {

/// Configuration of a suite run.  `scale` multiplies every trial count
/// (floored at 1) so scaled-down reproducibility checks stay cheap; tolerance
/// overrides replace a criterion's primary threshold by name.
struct SuiteSpec {
  uint64_t seed = 1;
  double scale = 1.0;
  std::vector<int> only;  // criterion ids to run; empty = all
  std::map<std::string, double> tol_overrides;
};

struct CriterionResult {
  int id = 0;
  std::string key;   // stable name, also the tolerance-override key
  std::string name;  // human-readable line
  bool pass = false;
  double residual = 0.0;  // worst observed value in the criterion's own metric
  double tol = 0.0;
  std::string details;
  double ms = 0.0;  // wall time; excluded from the byte-stable report
};

struct SuiteResult {
  SuiteSpec spec;
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

SuiteResult run_suite(const SuiteSpec& spec);

/// Deterministic JSON report; timings are only emitted on request since they
/// break byte-stability.
std::string suite_report_json(const SuiteResult& result, bool include_timings = false);

}  // namespace symgf::acceptance
