#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aircomp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// A fast subset of the model invariants, run by `aircomp validate`. Each
// check is self-contained and seeded; total runtime is a few seconds.
std::vector<CheckResult> run_quick_validation(std::uint64_t seed = 1);

}  // namespace aircomp
