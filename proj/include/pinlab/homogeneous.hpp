#pragma once

#include <vector>

#include "pinlab/disorder.hpp"
#include "pinlab/kernel.hpp"

namespace pinlab {

/// h_c = -log P(tau_1 < inf); exactly 0 for recurrent kernels.
double critical_point(const Kernel& kernel);

/// Left side of the root equation, Phi(F) = sum_n K(n) e^{-F n}, with the
/// truncated part beyond n_max folded in via the exponentially damped tail
/// integral. Strictly decreasing in F, Phi(0) = P(tau_1 < inf).
double partition_root_lhs(const Kernel& kernel, double F);

/// Homogeneous free energy: 0 for h <= h_c, else the unique F > 0 with
/// Phi(F) = e^{-h} (geometric bisection, relative precision ~1e-14).
double free_energy(const Kernel& kernel, double h);

/// F^a(beta, h) = F(h + lambda(beta)).
double annealed_free_energy(const Kernel& kernel, const DisorderSpec& disorder, double beta,
                            double h);

struct FreeEnergyCurve {
  std::vector<double> h;
  std::vector<double> F;
  double alpha = 0.0;
};

FreeEnergyCurve free_energy_curve(const Kernel& kernel, const std::vector<double>& hs);

struct FitResult {
  double slope = 0.0;
  double stderr_ = 0.0;
  int n_points = 0;
};

/// Least-squares slope of log F against log(h - h_c) over points with
/// h - h_c in [u_min, u_max] and F > 0; requires at least 5 such points.
FitResult exponent_fit(const FreeEnergyCurve& curve, double h_c, double u_min, double u_max);

}  // namespace pinlab
