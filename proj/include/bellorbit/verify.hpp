#pragma once

// Cross-check suite over a grid of (d, M) instances. Each named check is
// aggregated over all instances and reports its worst observed residual.

#include <functional>
#include <string>
#include <vector>

#include "bellorbit/group_orbit.hpp"

namespace bellorbit {

struct VerifyOptions {
  int outcomes_max = 6;
  int settings_max = 6;
  /// Source of the generator set for each instance. Tests replace it to
  /// check that a broken convention is caught.
  std::function<Generators(const ProblemSpec&)> generators = [](const ProblemSpec& s) { return make_generators(s); };
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  int instances = 0;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs every check for d = 2..outcomes_max, M = 1..settings_max.
/// Throws InstanceTooLargeError up front if any instance exceeds the
/// classical search limit.
VerificationReport run_verification(const VerifyOptions& options);

}  // namespace bellorbit
