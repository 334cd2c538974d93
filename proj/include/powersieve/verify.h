#pragma once

#include <string>
#include <vector>

namespace powersieve {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;  // instance count on pass, first failure otherwise
  double seconds = 0.0;
};

// Cross-module invariants at desk-scale parameters. `quick` shrinks every
// grid.
std::vector<CheckResult> run_verification(bool quick, unsigned workers = 1);

// One line per check plus a summary line.
std::string verification_table(const std::vector<CheckResult>& results);

}  // namespace powersieve
