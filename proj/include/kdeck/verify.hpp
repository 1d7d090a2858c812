#pragma once

#include <string>
#include <vector>

#include "kdeck/caps.hpp"

namespace kdeck {

/// Outcome of one acceptance check.
struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full acceptance battery (frozen counts, identities, invariance
/// suites, Monte Carlo check) and reports one result per criterion.
/// Criteria that are declared out of desk scale come back skipped.
std::vector<CheckResult> run_acceptance_battery(const Caps& caps = {});

/// "[ 3] PASS set count and probability: ..." one-line rendering.
std::string to_text(const CheckResult& result);

}  // namespace kdeck
