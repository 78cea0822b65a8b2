// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace cogbf {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Seeded property suites runnable from an installed binary: trace
/// inequality, solver contracts, dual monotonicity, slackness,
/// receive-side agreement and sweep determinism. `quick` trims the
/// instance counts.
std::vector<SelfTestResult> run_selftest(bool quick = false);

}  // namespace cogbf
