// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "cyclelab/verify.hpp"

int main() {
  int failed = 0;
  for (const auto& r : cyclelab::run_acceptance()) {
    std::printf("%s %2d  %-48s %7.3fs / %4.0fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.budget, r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", cyclelab::acceptance_count() - failed, cyclelab::acceptance_count());
  return failed == 0 ? 0 : 1;
}
