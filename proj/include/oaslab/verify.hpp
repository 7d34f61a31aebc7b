#pragma once

#include <string>
#include <vector>

namespace oaslab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Deterministic (non-Monte-Carlo) agreement suite: closed-form posterior
// statistics against the quadrature oracle, the adaptation-metric formula
// against its literal transcription, the block-wise masking identity, and
// the accelerated solver against the coordinate-descent reference.
VerifyReport run_verification();

}  // namespace oaslab
