#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pinlab/common.hpp"
#include "pinlab/disorder.hpp"
#include "pinlab/kernel.hpp"

namespace pinlab {

/// log Z_n^c and log Z_n for n = 0..N under one environment.
/// Invariant: log_zc[n] <= log_z[n] (constrained paths are a subset).
struct LogPartitionArrays {
  std::vector<double> log_zc;
  std::vector<double> log_z;
  double beta = 0.0;
  double h = 0.0;
};

/// Exact recursion Zc_n = e^{beta w_n + h} sum_{k<n} Zc_k K(n-k), and the
/// last-contact decomposition Z_n = sum_{k<=n} Zc_k P(tau_1 > n-k) with
/// P(tau_1 > 0) := 1 at k = n. Internally scaled-linear with a running shift
/// (rescaled whenever values leave [1e-250, 1e250]); outputs are exact logs.
/// O(N^2) time.
LogPartitionArrays log_partition(const Kernel& kernel, const Environment& env, double beta,
                                 double h, int N, bool with_free = true);

std::vector<double> log_partition_constrained(const Kernel& kernel, const Environment& env,
                                              double beta, double h, int N);

/// Free partition from an existing constrained array at a single size.
double log_partition_free(const Kernel& kernel, std::span<const double> log_zc, int N);

/// Independent oracle: exhaustive sum over all contact subsets of [1,N].
/// Returns (log Z_N, log Z_N^c). Requires N <= 20.
std::pair<double, double> brute_force_partition(const Kernel& kernel, const Environment& env,
                                                double beta, double h, int N);

/// Mean of (1/N) log Zc_N over n_samples i.i.d. environments, with standard
/// error. A certified lower bound on F^q in expectation (superadditivity).
Estimate quenched_free_energy(const Kernel& kernel, const DisorderSpec& disorder, double beta,
                              double h, int N, int n_samples, unsigned workers = 1);

/// Z_n at the annealed critical point h = -lambda(beta), n = 0..env.size().
std::vector<double> martingale_trajectory(const Kernel& kernel, const DisorderSpec& disorder,
                                          double beta, const Environment& env);

/// Exact E[Z_N^2] at h = -lambda(beta) via the intersection renewal:
/// V_0 = 1, V_n = e^c sum_k V_k K'(n-k), W_N = sum_k V_k P(tau'_1 > N-k),
/// where c = lambda(2 beta) - 2 lambda(beta). Returns log W_N for each N in
/// the (ascending) grid; k_prime must extend to the largest N.
std::vector<double> second_moment_exact_log(std::span<const double> k_prime, double c_gap,
                                            const std::vector<int>& Ns);
double second_moment_exact(const Kernel& kernel, const DisorderSpec& disorder, double beta, int N);

struct ComparisonReport {
  bool lower_bound_ok = false;  // log Z >= log Zc at every n
  double fitted_C = 0.0;        // smallest C with Z_N <= [1 + C N^{1+a+} e^{-beta w_N - h}] Zc_N
  double log_ratio = 0.0;       // log Z_N - log Zc_N
};

ComparisonReport comparison_check(const Kernel& kernel, const Environment& env, double beta,
                                  double h, int N, double alpha_plus);

}  // namespace pinlab
