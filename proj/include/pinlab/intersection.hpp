#pragma once

#include <vector>

#include "pinlab/kernel.hpp"

namespace pinlab {

struct ValueWithBracket {
  double value = 0.0;
  double halfwidth = 0.0;
};

/// Mass function of the intersection renewal tau' = tau^(1) /\ tau^(2):
/// u'_n = u_n^2 by independence.
std::vector<double> intersection_mass(const MassFunction& mass);

/// Inverts the renewal equation: K'(n) = u'_n - sum_{k<n} K'(k) u'_{n-k}.
/// Round-off negatives above -1e-12 are clamped to 0; anything below throws.
std::vector<double> deconvolve_interarrival(const std::vector<double>& u_prime);

/// m = E[|tau' \ {0}|] = sum_{n>=1} u_n^2, with the truncation tail bracketed
/// via the squared Doney asymptote (10% inflation on the constant).
/// Throws "recurrent intersection" outside the transience regime.
ValueWithBracket expected_intersection_count(const std::vector<double>& u_prime, double alpha,
                                             const SlowlyVaryingSpec& L);

/// p' = m / (1 + m): return probability of a renewal whose point count
/// (excluding 0) is geometric with mean m.
double return_probability(double m);

/// Analytic recurrence/transience of tau': transient iff alpha < 1/2, or
/// alpha == 1/2 with sum 1/(n L(n)^2) < inf (log-power with 2p > 1).
bool is_transient(double alpha, const SlowlyVaryingSpec& L);

struct IntersectionData {
  std::vector<double> u_prime;
  std::vector<double> k_prime;
  double m = 0.0;
  double m_halfwidth = 0.0;
  double p_return = 0.0;
};

/// Full pipeline over one kernel: u', K', m (with bracket), p'.
IntersectionData analyze_intersection(const Kernel& kernel, int n_max);

}  // namespace pinlab
