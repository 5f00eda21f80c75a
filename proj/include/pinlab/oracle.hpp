#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pinlab {

struct OracleCheck {
  std::string name;
  bool passed = false;
  double worst_error = 0.0;
};

struct OracleSuiteResult {
  std::vector<OracleCheck> checks;
  int n_passed = 0;
  int n_failed = 0;
  bool all_passed() const { return n_failed == 0; }
};

/// Brute-force equivalence battery: for random (alpha, beta, h, omega) tuples
/// and all N <= max_n, the O(N^2) recursion must match exhaustive enumeration
/// to `tol` in log for both the free and constrained partition functions.
/// Also runs the deconvolution round trip and the forward/backward
/// composition identity.
OracleSuiteResult run_oracle_suite(int n_tuples = 50, int max_n = 14, double tol = 1e-10,
                                   std::uint64_t seed = 20260823);

}  // namespace pinlab
