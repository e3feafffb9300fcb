// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Seed configurable via argv[1] for reproducibility experiments.
#include <cstdio>
#include <cstdlib>

#include "openchain/verification.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240808;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  auto results = openchain::run_acceptance(seed);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s %s [%ld checks, %.2f s]%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.cases, r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES");
  return all_pass ? 0 : 1;
}
