#include "pinlab/homogeneous.hpp"

#include <cmath>
#include <stdexcept>

namespace pinlab {

double critical_point(const Kernel& kernel) {
  if (kernel.recurrent()) return 0.0;
  return -std::log(kernel.total_mass());
}

double partition_root_lhs(const Kernel& kernel, double F) {
  const auto kw = kernel.weights();
  const auto tl = kernel.tail_array();
  const int m = kernel.n_max();
  const double r = std::exp(-F);
  double s = 0.0;
  double pw = 1.0;
  for (int n = 1; n <= m; ++n) {
    pw *= r;
    s += kw[n] * pw;
    // Remaining terms are bounded by e^{-F n} * P(tau_1 > n).
    if (pw * tl[n] < 1e-18) return s;
  }
  // Certified truncation tail with the e^{-F x} damping kept inside the
  // integral (needed to resolve the F^alpha singularity when F << 1/n_max).
  s += tail_integral(kernel.L(), kernel.alpha(), static_cast<double>(m) + 0.5, F) / kernel.norm();
  return s;
}

double free_energy(const Kernel& kernel, double h) {
  const double h_c = critical_point(kernel);
  if (h <= h_c) return 0.0;
  const double target = std::exp(-h);
  if (partition_root_lhs(kernel, 0.0) <= target) return 0.0;  // inside truncation slack

  // Bracket the root on a geometric grid, then bisect geometrically: F can
  // range over many decades (F ~ u^{1/alpha} near criticality).
  double hi = 1.0;
  while (partition_root_lhs(kernel, hi) > target) {
    hi *= 4.0;
    if (hi > 1e12) throw std::runtime_error("free_energy: no upper bracket");
  }
  double lo = hi / 4.0;
  while (partition_root_lhs(kernel, lo) < target) {
    hi = lo;
    lo /= 4.0;
    if (lo < 1e-300) return 0.0;
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (partition_root_lhs(kernel, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

double annealed_free_energy(const Kernel& kernel, const DisorderSpec& disorder, double beta,
                            double h) {
  return free_energy(kernel, h + log_mgf(disorder, beta));
}

FreeEnergyCurve free_energy_curve(const Kernel& kernel, const std::vector<double>& hs) {
  FreeEnergyCurve curve;
  curve.alpha = kernel.alpha();
  curve.h = hs;
  curve.F.reserve(hs.size());
  for (double h : hs) curve.F.push_back(free_energy(kernel, h));
  return curve;
}

FitResult exponent_fit(const FreeEnergyCurve& curve, double h_c, double u_min, double u_max) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.h.size(); ++i) {
    const double u = curve.h[i] - h_c;
    if (u >= u_min && u <= u_max && curve.F[i] > 0.0) {
      xs.push_back(std::log(u));
      ys.push_back(std::log(curve.F[i]));
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < 5) throw std::runtime_error("exponent_fit: fewer than 5 usable points in window");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.n_points = n;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - my - fit.slope * (xs[i] - mx);
    ss_res += r * r;
  }
  if (n > 2) fit.stderr_ = std::sqrt(ss_res / ((n - 2) * sxx));
  return fit;
}

}  // namespace pinlab
