#include "pinlab/disorder.hpp"

#include <cmath>
#include <stdexcept>

#include "pinlab/common.hpp"

namespace pinlab {

namespace {
const double kSqrt3 = 1.7320508075688772935274463;
}

Environment sample_environment(const DisorderSpec& spec, int N, std::uint64_t sample_index) {
  if (N < 1) throw std::invalid_argument("sample_environment: N must be >= 1");
  Environment env;
  env.spec = spec;
  env.sample_index = sample_index;
  env.omega.assign(static_cast<std::size_t>(N) + 1, 0.0);
  Rng rng(mix_seed(spec.seed_base, sample_index));
  switch (spec.family) {
    case DisorderFamily::Gaussian:
      for (int n = 1; n <= N; ++n) env.omega[n] = rng.gaussian();
      break;
    case DisorderFamily::Rademacher:
      for (int n = 1; n <= N; ++n) env.omega[n] = (rng.next_u64() >> 63) ? 1.0 : -1.0;
      break;
    case DisorderFamily::Uniform:
      for (int n = 1; n <= N; ++n) env.omega[n] = kSqrt3 * (2.0 * rng.uniform() - 1.0);
      break;
  }
  return env;
}

double log_mgf(DisorderFamily family, double beta) {
  switch (family) {
    case DisorderFamily::Gaussian:
      return 0.5 * beta * beta;
    case DisorderFamily::Rademacher:
      // log cosh(beta), overflow-safe
      return std::abs(beta) + std::log1p(std::exp(-2.0 * std::abs(beta))) -
             0.6931471805599453094172321;
    case DisorderFamily::Uniform: {
      const double t = kSqrt3 * beta;
      if (std::abs(t) < 1e-6) return t * t / 6.0;  // series limit at beta -> 0
      // log(sinh t / t), overflow-safe
      return std::abs(t) + std::log1p(-std::exp(-2.0 * std::abs(t))) -
             0.6931471805599453094172321 - std::log(std::abs(t));
    }
  }
  return 0.0;
}

double log_mgf(const DisorderSpec& spec, double beta) { return log_mgf(spec.family, beta); }

double mgf_gap(DisorderFamily family, double beta) {
  return log_mgf(family, 2.0 * beta) - 2.0 * log_mgf(family, beta);
}

double beta2(const DisorderSpec& spec, double p_return) {
  if (!(p_return >= 0.0 && p_return <= 1.0))
    throw std::invalid_argument("beta2: p_return must lie in [0,1]");
  if (p_return >= 1.0) return 0.0;  // recurrent intersection
  const double target = -std::log(p_return);
  // The gap is continuous, 0 at beta = 0 and nondecreasing for all three
  // families, so bisection after an exponential bracket search is safe.
  double hi = 1.0;
  while (mgf_gap(spec.family, hi) < target) {
    hi *= 2.0;
    if (hi > 1e6) {
      // Bounded gap (Rademacher caps at log 2): no finite threshold.
      return kInf;
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mgf_gap(spec.family, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double beta2(const DisorderSpec& spec, const Kernel& kernel) {
  if (!kernel.recurrent())
    throw std::invalid_argument("beta2: kernel must be recurrent (shift transient inputs first)");
  if (!is_transient(kernel.alpha(), kernel.L())) return 0.0;
  const MassFunction mf = renewal_mass(kernel, kernel.n_max());
  const auto up = intersection_mass(mf);
  const ValueWithBracket m = expected_intersection_count(up, kernel.alpha(), kernel.L());
  return beta2(spec, return_probability(m.value));
}

}  // namespace pinlab
