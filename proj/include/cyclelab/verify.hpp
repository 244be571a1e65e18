#pragma once

#include <string>
#include <vector>

namespace cyclelab {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  /// wall-clock limit; exceeding it fails the check
  double budget = 0;
};

/// Number of acceptance checks (ids 1..count).
int acceptance_count();
/// Errors inside a check are caught and reported as a failure.
CheckResult run_check(int id);
std::vector<CheckResult> run_acceptance();

}  // namespace cyclelab
