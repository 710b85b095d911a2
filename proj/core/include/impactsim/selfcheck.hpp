#pragma once

// Analytic cross-checks between the amplitude engine and the closed forms,
// evaluated over seeded random phase triples.  Every identity must hold to
// the stated tolerance on a correct build; the corrupt_sign fixture flips one
// amplitude sign to prove the checks can fail.

#include <cstdint>
#include <string>
#include <vector>

namespace impactsim {

struct CheckResult {
  std::string name;
  double max_deviation;
  double tolerance;
  bool passed;
};

struct SelfCheckOptions {
  std::uint64_t seed = 0xdecafbad;
  int trials = 1000;
  double tolerance = 1e-12;
  bool corrupt_sign = false;  // negative-control fixture
};

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace impactsim
