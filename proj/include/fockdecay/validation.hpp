#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fockdecay::validation {

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool numeric = true;  // structural checks ignore tolerance overrides
};

struct ValidationOptions {
  /// Replaces every numeric tolerance when set.
  std::optional<double> tolerance;
  /// Flip the characteristic-function exponent sign (diverges) in the residual check.
  bool break_sign = false;
};

/// Runs the oracle and metric invariant suites.
std::vector<CheckResult> run_checks(const ValidationOptions& opts = {});

/// {"tool": ..., "passed": bool, "checks": [{"check", "max_error", "tolerance", "pass"}]}
std::string to_json(const std::vector<CheckResult>& checks);

}  // namespace fockdecay::validation
