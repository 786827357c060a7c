// Acceptance gate: runs every verification campaign with its pinned default
// configuration and prints one PASS/FAIL line per criterion.
#include <cstdio>

#include "polyweight/polyweight.hpp"

int main() {
  using namespace polyweight;
  const RunConfig cfg;  // pinned seed 20240915, default sample counts and tolerances
  int failures = 0;
  int index = 0;
  for (const std::string& id : claim_ids()) {
    ++index;
    VerificationSummary s;
    try {
      s = run_claim(id, cfg);
    } catch (const std::exception& e) {
      std::printf("[%2d] FAIL %-26s error: %s\n", index, id.c_str(), e.what());
      ++failures;
      continue;
    }
    if (!s.passed) ++failures;
    if (s.supremum) {
      std::printf("[%2d] %s %-26s samples=%ld violations=%ld max_residual=%.3e supremum=%.9f (%.0f ms)\n",
                  index, s.passed ? "PASS" : "FAIL", id.c_str(), s.samples, s.violations,
                  s.max_residual, *s.supremum, s.wall_ms);
    } else {
      std::printf("[%2d] %s %-26s samples=%ld violations=%ld max_residual=%.3e (%.0f ms)\n",
                  index, s.passed ? "PASS" : "FAIL", id.c_str(), s.samples, s.violations,
                  s.max_residual, s.wall_ms);
    }
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
