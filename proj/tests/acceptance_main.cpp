// Acceptance battery runner: one line per criterion, nonzero exit on any
// failure. Skipped criteria (declared out of reach for a desk machine) do
// not fail the run; they are reported as SKIP with a reason.

#include <cstdio>

#include "kdeck/verify.hpp"

int main() {
  auto results = kdeck::run_acceptance_battery();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    std::puts(kdeck::to_text(r).c_str());
    if (r.skipped)
      ++skipped;
    else if (r.pass)
      ++passed;
    else
      ++failed;
  }
  std::printf("%d passed, %d failed, %d skipped\n", passed, failed, skipped);
  return failed == 0 ? 0 : 1;
}
