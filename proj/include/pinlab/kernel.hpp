#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pinlab/slowly_varying.hpp"

namespace pinlab {

/// Power-law renewal inter-arrival law K(n) = L(n) / n^{1+alpha}, alpha in (0,1).
struct KernelSpec {
  double alpha = 0.5;
  SlowlyVaryingSpec L = SlowlyVaryingSpec::constant();
  bool recurrent = true;
  int n_max = 100000;
  double tail_tolerance = 1e-2;  // relative width of the truncation-tail bracket

  void validate() const;  // throws std::invalid_argument
};

/// Truncated inter-arrival law with a certified tail estimate.
///
/// For recurrent kernels the raw weights L(n)/n^{1+alpha} are normalized so
/// that Sum_{n<=n_max} K(n) + tail_estimate = 1; the tail beyond n_max is the
/// midpoint of the bracketing integrals over [n_max, inf) and [n_max+1, inf),
/// and the half-width of that bracket is the truncation certificate.
class Kernel {
 public:
  static Kernel build(const KernelSpec& spec);

  double k(int n) const { return k_[static_cast<std::size_t>(n)]; }
  double log_k(int n) const { return log_k_[static_cast<std::size_t>(n)]; }
  /// P(tau_1 > n) = defect + sum_{j>n} K(j) + tail_estimate, 0 <= n <= n_max.
  double tail(int n) const;

  int n_max() const { return spec_.n_max; }
  double alpha() const { return spec_.alpha; }
  const SlowlyVaryingSpec& L() const { return spec_.L; }
  bool recurrent() const { return spec_.recurrent; }
  const KernelSpec& spec() const { return spec_; }

  double total_mass() const { return total_mass_; }      // P(tau_1 < inf)
  double defect() const { return defect_; }              // 1 - P(tau_1 < inf)
  double tail_estimate() const { return tail_estimate_; }
  double tail_halfwidth() const { return tail_halfwidth_; }
  double norm() const { return norm_; }                  // divisor applied to raw weights

  std::span<const double> weights() const { return k_; }          // index 0 unused
  std::span<const double> tail_array() const { return tail_; }    // P(tau_1 > n)
  std::span<const double> cumulative() const { return cum_; }     // sum_{j<=n} K(j)

 private:
  KernelSpec spec_;
  std::vector<double> k_, log_k_, tail_, cum_;
  double total_mass_ = 0.0, defect_ = 0.0, tail_estimate_ = 0.0, tail_halfwidth_ = 0.0,
         norm_ = 1.0;
};

Kernel build_kernel(const KernelSpec& spec);
double tail_probability(const Kernel& kernel, int n);  // bounds-checked kernel.tail(n)

/// Renewal mass function u_n = P(n in tau), u_0 = 1.
struct MassFunction {
  std::vector<double> u;  // indexed 0..n_max
  int n_max() const { return static_cast<int>(u.size()) - 1; }
};

/// Exact renewal convolution u_n = sum_{k=1}^{n} K(k) u_{n-k}; O(n_max^2).
MassFunction renewal_mass(const Kernel& kernel, int n_max);

/// Doney asymptote for P(n in tau): alpha*sin(pi*alpha) / (pi * L(n) * n^{1-alpha}).
double doney_asymptote(double alpha, const SlowlyVaryingSpec& L, double n);

/// Same, for the law the kernel actually encodes: the normalization constant
/// is part of the effective slowly varying factor, L_eff(n) = L(n)/norm.
double doney_asymptote(const Kernel& kernel, double n);

/// a_k solving k * L(a) * a^{-alpha} = 1 (bisection; exact k^{1/alpha} for constant L=1).
double stable_scale(const Kernel& kernel, double k);
double stable_scale(double alpha, const SlowlyVaryingSpec& L, double k);

/// Renewal points in [0, horizon], starting with 0, strictly increasing.
struct ContactSet {
  std::vector<int> points;
  int count_in_1_to_n() const { return static_cast<int>(points.size()) - 1; }
  bool contains(int n) const;
};

/// I.i.d. inter-arrivals by inverse CDF on the precomputed cumulative law,
/// with a Pareto fallback for draws beyond n_max and a stop on the defect atom.
ContactSet sample_renewal(const Kernel& kernel, int horizon, std::uint64_t seed);

}  // namespace pinlab
