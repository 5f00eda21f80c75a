#include "pinlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pinlab/common.hpp"

namespace pinlab {

void KernelSpec::validate() const {
  L.validate();
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("KernelSpec: alpha must lie in (0,1), got " +
                                std::to_string(alpha));
  if (n_max < 1) throw std::invalid_argument("KernelSpec: n_max must be >= 1");
  if (!(tail_tolerance > 0.0))
    throw std::invalid_argument("KernelSpec: tail_tolerance must be > 0");
}

Kernel Kernel::build(const KernelSpec& spec) {
  spec.validate();
  Kernel ker;
  ker.spec_ = spec;
  const int m = spec.n_max;

  std::vector<double> raw(static_cast<std::size_t>(m) + 1, 0.0);
  double raw_sum = 0.0;
  for (int n = 1; n <= m; ++n) {
    const double x = static_cast<double>(n);
    raw[n] = spec.L(x) * std::pow(x, -1.0 - spec.alpha);
    raw_sum += raw[n];
  }

  // Bracket the raw tail mass beyond n_max: the summand is decreasing, so
  // sum_{n>m} lies between the integrals from m+1 and from m.
  const double tail_hi = tail_integral(spec.L, spec.alpha, static_cast<double>(m));
  const double tail_lo = tail_integral(spec.L, spec.alpha, static_cast<double>(m) + 1.0);
  const double tail_mid = 0.5 * (tail_hi + tail_lo);
  const double tail_hw = 0.5 * (tail_hi - tail_lo);

  const double grand_total = raw_sum + tail_mid;
  if (tail_hw / grand_total > spec.tail_tolerance) {
    // Required n_max from the scaling of the bracket width, K(n) ~ n^{-1-alpha}.
    const double factor =
        std::pow(tail_hw / (spec.tail_tolerance * grand_total), 1.0 / (1.0 + spec.alpha));
    const long needed = static_cast<long>(std::ceil(static_cast<double>(m) * factor));
    throw std::runtime_error("build_kernel: tail_tolerance " +
                             std::to_string(spec.tail_tolerance) + " unachievable at n_max=" +
                             std::to_string(m) + "; need n_max >= " + std::to_string(needed));
  }

  if (spec.recurrent) {
    ker.norm_ = grand_total;
    ker.total_mass_ = 1.0;
    ker.defect_ = 0.0;
  } else {
    ker.norm_ = 1.0;
    ker.total_mass_ = grand_total;
    ker.defect_ = std::max(0.0, 1.0 - grand_total);
  }
  ker.tail_estimate_ = tail_mid / ker.norm_;
  ker.tail_halfwidth_ = tail_hw / ker.norm_;

  ker.k_.assign(static_cast<std::size_t>(m) + 1, 0.0);
  ker.log_k_.assign(static_cast<std::size_t>(m) + 1, kNegInf);
  ker.cum_.assign(static_cast<std::size_t>(m) + 1, 0.0);
  ker.tail_.assign(static_cast<std::size_t>(m) + 1, 0.0);
  double cum = 0.0;
  for (int n = 1; n <= m; ++n) {
    ker.k_[n] = raw[n] / ker.norm_;
    ker.log_k_[n] = std::log(ker.k_[n]);
    cum += ker.k_[n];
    ker.cum_[n] = cum;
  }
  double suffix = ker.defect_ + ker.tail_estimate_;
  ker.tail_[m] = suffix;
  for (int n = m; n >= 1; --n) {
    suffix += ker.k_[n];
    ker.tail_[n - 1] = suffix;
  }
  return ker;
}

double Kernel::tail(int n) const { return tail_[static_cast<std::size_t>(n)]; }

Kernel build_kernel(const KernelSpec& spec) { return Kernel::build(spec); }

double tail_probability(const Kernel& kernel, int n) {
  if (n < 0 || n > kernel.n_max())
    throw std::out_of_range("tail_probability: n must lie in [0, n_max]");
  return kernel.tail(n);
}

MassFunction renewal_mass(const Kernel& kernel, int n_max) {
  if (n_max > kernel.n_max())
    throw std::invalid_argument("renewal_mass: n_max exceeds kernel truncation");
  MassFunction mf;
  mf.u.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  mf.u[0] = 1.0;
  const auto kw = kernel.weights();
  for (int n = 1; n <= n_max; ++n) {
    double s = 0.0;
    const double* kp = kw.data() + 1;
    const double* up = mf.u.data() + n - 1;
    for (int j = 0; j < n; ++j) s += kp[j] * up[-j];
    mf.u[n] = s;
  }
  return mf;
}

double doney_asymptote(double alpha, const SlowlyVaryingSpec& L, double n) {
  const double pi = 3.14159265358979323846;
  return alpha * std::sin(pi * alpha) / (pi * L(n) * std::pow(n, 1.0 - alpha));
}

double doney_asymptote(const Kernel& kernel, double n) {
  // Normalizing the raw weights divides the slowly varying factor by norm.
  return doney_asymptote(kernel.alpha(), kernel.L(), n) * kernel.norm();
}

double stable_scale(double alpha, const SlowlyVaryingSpec& L, double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("stable_scale: k must be >= 1");
  // g(a) = k * L(a) * a^{-alpha} is decreasing in a for our L families at
  // the scales of interest; solve g(a) = 1 by bisection on [lo, hi].
  auto g = [&](double a) { return k * L(a) * std::pow(a, -alpha); };
  double lo = 1e-12, hi = 2.0;
  while (g(hi) > 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("stable_scale: no bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double stable_scale(const Kernel& kernel, double k) {
  return stable_scale(kernel.alpha(), kernel.L(), k);
}

bool ContactSet::contains(int n) const {
  return std::binary_search(points.begin(), points.end(), n);
}

ContactSet sample_renewal(const Kernel& kernel, int horizon, std::uint64_t seed) {
  Rng rng(seed);
  ContactSet cs;
  cs.points.push_back(0);
  const auto cum = kernel.cumulative();
  const int m = kernel.n_max();
  const double in_range = cum[m];
  long pos = 0;
  while (pos <= horizon) {
    const double u = rng.uniform();
    long gap;
    if (u < in_range) {
      // smallest n with cum[n] > u
      const auto it = std::upper_bound(cum.begin() + 1, cum.end(), u);
      gap = it - cum.begin();
    } else if (u < in_range + kernel.tail_estimate()) {
      // Pareto fallback for the truncated tail; such draws land beyond n_max.
      const double v = rng.uniform_pos();
      gap = static_cast<long>(std::ceil(m * std::pow(v, -1.0 / kernel.alpha())));
      if (gap <= m) gap = m + 1;
    } else {
      break;  // defect atom: no further return
    }
    pos += gap;
    if (pos > horizon) break;
    cs.points.push_back(static_cast<int>(pos));
  }
  return cs;
}

}  // namespace pinlab
