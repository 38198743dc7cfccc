#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qsum::verify {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct Check {
  /// Acceptance criterion number (1..10).
  int criterion = 0;
  /// unitarity, oracle-equivalence, bounds, calculus or average-case.
  std::string suite;
  std::string name;
  std::function<CheckResult()> run;
};

/// Every acceptance check, ordered by criterion.
const std::vector<Check>& all_checks();

/// Suite names accepted by run_suite, "all" included.
const std::vector<std::string>& suite_names();

bool is_suite(std::string_view name);

/// Runs a suite, printing one pass/fail row per check. Returns true if all
/// checks pass. Throws std::invalid_argument for an unknown suite.
bool run_suite(std::string_view suite, std::ostream& out);

}  // namespace qsum::verify
