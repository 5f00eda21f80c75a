#pragma once

#include <cstdint>
#include <vector>

#include "pinlab/disorder.hpp"
#include "pinlab/kernel.hpp"

namespace pinlab {

/// log Zc_to_end[k]: partition of the segment [k, N] given a contact at k,
/// free right end. Mirrored recursion of the forward pass.
struct BackwardWeights {
  std::vector<double> log_z_to_end;  // index 0..N
  double beta = 0.0, h = 0.0;
  int N = 0;
};

BackwardWeights backward_weights(const Kernel& kernel, const Environment& env, double beta,
                                 double h, int N);

/// Exact draw from P_N^{beta,h,omega}: sequential next-contact sampling with
/// probabilities K(j-k) e^{beta w_j + h} Zb[j] / Zb[k] and the no-further-
/// contact tail weight.
ContactSet sample_path(const BackwardWeights& weights, const Kernel& kernel,
                       const Environment& env, std::uint64_t seed);

/// Exact law of the contact count |tau /\ [1,N]| under P_N^{beta,h,omega}.
struct ContactLaw {
  int N = 0;
  std::vector<double> q;  // q[j] = P(count == j), j = 0..N
  double log_z = 0.0;     // normalization, equals log Z_N

  double prob_count_above(double threshold) const;
  double mean() const;
};

/// O(N^3) count-resolved dynamic program; requires N <= 512.
ContactLaw contact_count_law(const Kernel& kernel, const Environment& env, double beta, double h,
                             int N);

struct ContactFractionCell {
  int N = 0;
  double mean_prob = 0.0;    // E[ P_N(count > N^gamma) ]
  double stderr_ = 0.0;
  double frac_above_c = 0.0; // P-fraction of environments with inner prob > c
  bool exact = false;        // count law vs Monte Carlo paths
};

struct ContactFractionReport {
  double beta = 0.0, gamma = 0.0, threshold_c = 0.0;
  std::vector<ContactFractionCell> cells;
};

/// Contact-fraction experiment at the annealed critical point h = -lambda(beta).
/// Exact inner law when N <= exact_limit, otherwise n_paths sampled paths.
ContactFractionReport contact_fraction_experiment(const Kernel& kernel,
                                                  const DisorderSpec& disorder, double beta,
                                                  double gamma, const std::vector<int>& N_grid,
                                                  int n_samples, double threshold_c,
                                                  int exact_limit = 512, int n_paths = 200,
                                                  unsigned workers = 1);

/// Exact law of tau /\ [0,m] under P_N^{beta,-lambda(beta),omega}.
/// prob[mask] is the probability that the contacts in [1,m] are exactly the
/// set bits of mask (site 0 is always a contact). Requires m <= 16.
struct MarginalLaw {
  int m = 0;
  std::vector<double> prob;  // size 2^m
};

MarginalLaw finite_marginal_law(const Kernel& kernel, const Environment& env, double beta, int m,
                                int N);

double total_variation(const MarginalLaw& a, const MarginalLaw& b);

}  // namespace pinlab
