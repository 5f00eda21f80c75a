#pragma once

#include <cstdint>
#include <vector>

#include "pinlab/intersection.hpp"
#include "pinlab/kernel.hpp"

namespace pinlab {

/// Centered, unit-variance disorder families with exponential moments.
enum class DisorderFamily { Gaussian, Rademacher, Uniform };

struct DisorderSpec {
  DisorderFamily family = DisorderFamily::Gaussian;
  std::uint64_t seed_base = 0;
};

/// One quenched realization omega_1..omega_N. omega[0] is unused padding so
/// that omega[n] is the variable at site n.
struct Environment {
  std::vector<double> omega;
  DisorderSpec spec;
  std::uint64_t sample_index = 0;

  int size() const { return static_cast<int>(omega.size()) - 1; }
  double operator[](int n) const { return omega[static_cast<std::size_t>(n)]; }
};

/// Deterministic given (spec, sample_index, N); disjoint streams per index.
Environment sample_environment(const DisorderSpec& spec, int N, std::uint64_t sample_index);

/// lambda(beta) = log E exp(beta * omega_1), closed form per family.
double log_mgf(DisorderFamily family, double beta);
double log_mgf(const DisorderSpec& spec, double beta);

/// The second-moment gap lambda(2 beta) - 2 lambda(beta), >= 0.
double mgf_gap(DisorderFamily family, double beta);

/// beta_2 threshold: solves lambda(2b) - 2 lambda(b) = -log p' for a given
/// intersection return probability p'. Returns 0 when the intersection
/// renewal is recurrent (p' = 1) and +infinity when the gap is bounded below
/// -log p' (possible for Rademacher, whose gap is capped at log 2).
double beta2(const DisorderSpec& spec, double p_return);

/// Convenience: computes p' from the kernel (recurrent kernels only) over the
/// kernel's full truncation range, or returns 0 immediately in the
/// analytically recurrent regime.
double beta2(const DisorderSpec& spec, const Kernel& kernel);

}  // namespace pinlab
