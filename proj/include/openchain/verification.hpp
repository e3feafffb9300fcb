#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace openchain {

struct CheckResult {
  std::string name;
  bool pass = false;
  long cases = 0;  // elementary comparisons performed
  double seconds = 0.0;
  std::string detail;  // first failure, empty when pass
};

struct VerifyOptions {
  int n_exact = 4;
  int n_float = 8;
  std::uint64_t seed = 20240808;
  // Harness sanity switch: injects a sign error into the verification's own
  // filling-function path so the Hasse cross-check must fail.
  bool mutate_filling = false;
};

// Per-invariant suites at a configurable size (the `verify` command).
std::vector<CheckResult> run_exact_checks(const VerifyOptions& opts);
std::vector<CheckResult> run_float_checks(const VerifyOptions& opts);

// The full acceptance suite at its fixed sizes and tolerances.
std::vector<CheckResult> run_acceptance(std::uint64_t seed);

}  // namespace openchain
