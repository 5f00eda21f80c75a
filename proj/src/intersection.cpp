#include "pinlab/intersection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinlab {

std::vector<double> intersection_mass(const MassFunction& mass) {
  std::vector<double> up(mass.u.size());
  for (std::size_t n = 0; n < mass.u.size(); ++n) up[n] = mass.u[n] * mass.u[n];
  return up;
}

std::vector<double> deconvolve_interarrival(const std::vector<double>& u_prime) {
  if (u_prime.empty() || u_prime[0] != 1.0)
    throw std::invalid_argument("deconvolve_interarrival: u'_0 must be 1");
  const int n_max = static_cast<int>(u_prime.size()) - 1;
  std::vector<double> kp(u_prime.size(), 0.0);
  for (int n = 1; n <= n_max; ++n) {
    double s = u_prime[n];
    for (int k = 1; k < n; ++k) s -= kp[k] * u_prime[n - k];
    if (s < -1e-12)
      throw std::runtime_error("deconvolve_interarrival: inconsistent input, K'(" +
                               std::to_string(n) + ") = " + std::to_string(s));
    kp[n] = std::max(s, 0.0);
  }
  return kp;
}

bool is_transient(double alpha, const SlowlyVaryingSpec& L) {
  if (alpha < 0.5) return true;
  if (alpha > 0.5) return false;
  // alpha == 1/2: transient iff sum 1/(n L(n)^2) converges.
  switch (L.kind) {
    case SlowlyVaryingSpec::Kind::Constant:
      return false;
    case SlowlyVaryingSpec::Kind::LogPower:
      return 2.0 * L.p > 1.0;
  }
  return false;
}

ValueWithBracket expected_intersection_count(const std::vector<double>& u_prime, double alpha,
                                             const SlowlyVaryingSpec& L) {
  if (!is_transient(alpha, L)) throw std::runtime_error("recurrent intersection");
  const int n_max = static_cast<int>(u_prime.size()) - 1;
  double partial = 0.0;
  for (int n = 1; n <= n_max; ++n) partial += u_prime[n];

  // Tail via the squared Doney asymptote c_a^2 / (L(x)^2 x^{2-2alpha}),
  // bracketing integrals inflated/deflated by 10% on the constant.
  const double pi = 3.14159265358979323846;
  const double ca = alpha * std::sin(pi * alpha) / pi;
  const double a_hi = static_cast<double>(n_max);
  const double a_lo = static_cast<double>(n_max) + 1.0;
  double base_hi, base_lo;
  const double rate = 1.0 - 2.0 * alpha;
  if (rate > 1e-9) {
    auto f = [&](double x) {
      const double l = L(x);
      return ca * ca / (l * l * std::pow(x, 2.0 - 2.0 * alpha));
    };
    base_hi = tail_integral_of(f, a_hi, rate);
    base_lo = tail_integral_of(f, a_lo, rate);
  } else {
    // alpha == 1/2 with log-power L: integral has the closed form
    // ca^2/c^2 * log(a+e)^{1-2p} / (2p-1).
    const double e = 2.718281828459045235360287;
    auto closed = [&](double a) {
      return ca * ca / (L.c * L.c) * std::pow(std::log(a + e), 1.0 - 2.0 * L.p) /
             (2.0 * L.p - 1.0);
    };
    base_hi = closed(a_hi);
    base_lo = closed(a_lo);
  }
  const double hi = base_hi * 1.1;
  const double lo = base_lo / 1.1;
  ValueWithBracket out;
  out.value = partial + 0.5 * (hi + lo);
  out.halfwidth = 0.5 * (hi - lo);
  return out;
}

double return_probability(double m) {
  if (m < 0.0) throw std::invalid_argument("return_probability: m must be >= 0");
  return m / (1.0 + m);
}

IntersectionData analyze_intersection(const Kernel& kernel, int n_max) {
  IntersectionData data;
  const MassFunction mf = renewal_mass(kernel, n_max);
  data.u_prime = intersection_mass(mf);
  data.k_prime = deconvolve_interarrival(data.u_prime);
  const ValueWithBracket m = expected_intersection_count(data.u_prime, kernel.alpha(), kernel.L());
  data.m = m.value;
  data.m_halfwidth = m.halfwidth;
  data.p_return = return_probability(data.m);
  return data;
}

}  // namespace pinlab
