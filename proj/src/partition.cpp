#include "pinlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pinlab {

LogPartitionArrays log_partition(const Kernel& kernel, const Environment& env, double beta,
                                 double h, int N, bool with_free) {
  if (env.size() < N) throw std::invalid_argument("log_partition: environment shorter than N");
  if (N > kernel.n_max()) throw std::invalid_argument("log_partition: N exceeds kernel n_max");

  LogPartitionArrays out;
  out.beta = beta;
  out.h = h;
  out.log_zc.assign(static_cast<std::size_t>(N) + 1, 0.0);
  if (with_free) out.log_z.assign(static_cast<std::size_t>(N) + 1, 0.0);

  const double* K = kernel.weights().data();
  const double* T = kernel.tail_array().data();

  // z[k] = Zc_k * e^{-shift}; rescaled so the working values stay in range.
  std::vector<double> z(static_cast<std::size_t>(N) + 1, 0.0);
  double shift = 0.0;
  z[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    double sc = 0.0;
    const double* zp = z.data();
    const double* kp = K + n;
    for (int k = 0; k < n; ++k) sc += zp[k] * kp[-k];
    const double v = std::exp(beta * env[n] + h) * sc;
    z[n] = v;
    out.log_zc[n] = std::log(v) + shift;
    if (with_free) {
      double sf = v;  // k = n term, P(tau_1 > 0) := 1
      const double* tp = T + n;
      for (int k = 0; k < n; ++k) sf += zp[k] * tp[-k];
      out.log_z[n] = std::log(sf) + shift;
    }
    if (v > 1e250 || v < 1e-250) {
      const double f = 1.0 / v;
      for (int k = 0; k <= n; ++k) z[k] *= f;
      shift += std::log(v);
    }
  }
  return out;
}

std::vector<double> log_partition_constrained(const Kernel& kernel, const Environment& env,
                                              double beta, double h, int N) {
  return log_partition(kernel, env, beta, h, N, /*with_free=*/false).log_zc;
}

double log_partition_free(const Kernel& kernel, std::span<const double> log_zc, int N) {
  if (static_cast<int>(log_zc.size()) <= N)
    throw std::invalid_argument("log_partition_free: array shorter than N");
  LogAccumulator acc;
  for (int k = 0; k < N; ++k) acc.add(log_zc[k] + std::log(kernel.tail(N - k)));
  acc.add(log_zc[N]);  // last contact at N, P(tau_1 > 0) := 1
  return acc.value();
}

std::pair<double, double> brute_force_partition(const Kernel& kernel, const Environment& env,
                                                double beta, double h, int N) {
  if (N > 20) throw std::invalid_argument("brute_force_partition: N must be <= 20");
  if (env.size() < N) throw std::invalid_argument("brute_force_partition: env shorter than N");
  LogAccumulator free_acc, con_acc;
  const std::uint64_t n_masks = 1ULL << N;
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    double lw = 0.0;
    int last = 0;
    for (int n = 1; n <= N; ++n) {
      if (mask & (1ULL << (n - 1))) {
        lw += kernel.log_k(n - last) + beta * env[n] + h;
        last = n;
      }
    }
    if (last == N) {
      con_acc.add(lw);
      free_acc.add(lw);  // tail factor P(tau_1 > 0) := 1
    } else {
      free_acc.add(lw + std::log(kernel.tail(N - last)));
    }
  }
  return {free_acc.value(), con_acc.value()};
}

Estimate quenched_free_energy(const Kernel& kernel, const DisorderSpec& disorder, double beta,
                              double h, int N, int n_samples, unsigned workers) {
  if (n_samples < 2) throw std::invalid_argument("quenched_free_energy: n_samples must be >= 2");
  std::vector<double> xs(static_cast<std::size_t>(n_samples), 0.0);
  parallel_for(static_cast<std::size_t>(n_samples), workers, [&](std::size_t i) {
    const Environment env = sample_environment(disorder, N, i);
    const auto zc = log_partition_constrained(kernel, env, beta, h, N);
    xs[i] = zc[static_cast<std::size_t>(N)] / static_cast<double>(N);
  });
  return mean_and_stderr(xs);
}

std::vector<double> martingale_trajectory(const Kernel& kernel, const DisorderSpec& disorder,
                                          double beta, const Environment& env) {
  const int N = env.size();
  const double h = -log_mgf(disorder, beta);
  const auto arrays = log_partition(kernel, env, beta, h, N, /*with_free=*/true);
  std::vector<double> zn(static_cast<std::size_t>(N) + 1, 1.0);
  for (int n = 1; n <= N; ++n) zn[n] = std::exp(arrays.log_z[n]);
  return zn;
}

std::vector<double> second_moment_exact_log(std::span<const double> k_prime, double c_gap,
                                            const std::vector<int>& Ns) {
  if (Ns.empty()) return {};
  const int n_top = *std::max_element(Ns.begin(), Ns.end());
  if (static_cast<int>(k_prime.size()) <= n_top)
    throw std::invalid_argument("second_moment_exact_log: k_prime shorter than max N");
  const double ec = std::exp(c_gap);

  // Pinned recursion in scaled-linear form; tau' tail from its own cumulative.
  std::vector<double> v(static_cast<std::size_t>(n_top) + 1, 0.0);
  std::vector<double> logv(static_cast<std::size_t>(n_top) + 1, 0.0);
  std::vector<double> qtail(static_cast<std::size_t>(n_top) + 1, 0.0);  // P(tau'_1 > j)
  double cum = 0.0;
  qtail[0] = 1.0;
  for (int j = 1; j <= n_top; ++j) {
    cum += k_prime[j];
    qtail[j] = std::max(0.0, 1.0 - cum);
  }
  double shift = 0.0;
  v[0] = 1.0;
  for (int n = 1; n <= n_top; ++n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += v[k] * k_prime[n - k];
    const double val = ec * s;
    v[n] = val;
    logv[n] = std::log(val) + shift;
    if (val > 1e250 || val < 1e-250) {
      const double f = 1.0 / val;
      for (int k = 0; k <= n; ++k) v[k] *= f;
      shift += std::log(val);
    }
  }
  std::vector<double> out;
  out.reserve(Ns.size());
  for (int N : Ns) {
    LogAccumulator acc;
    acc.add(0.0 + std::log(qtail[N]));  // k = 0 term, log V_0 = 0
    for (int k = 1; k < N; ++k) acc.add(logv[k] + std::log(qtail[N - k]));
    acc.add(logv[N]);  // P(tau'_1 > 0) := 1
    out.push_back(acc.value());
  }
  return out;
}

double second_moment_exact(const Kernel& kernel, const DisorderSpec& disorder, double beta,
                           int N) {
  const IntersectionData data = analyze_intersection(kernel, std::min(kernel.n_max(), N));
  const double c = mgf_gap(disorder.family, beta);
  const auto logw = second_moment_exact_log(data.k_prime, c, {N});
  return std::exp(logw[0]);
}

ComparisonReport comparison_check(const Kernel& kernel, const Environment& env, double beta,
                                  double h, int N, double alpha_plus) {
  if (!(alpha_plus > kernel.alpha()))
    throw std::invalid_argument("comparison_check: alpha_plus must exceed alpha");
  const auto arrays = log_partition(kernel, env, beta, h, N, /*with_free=*/true);
  ComparisonReport rep;
  rep.lower_bound_ok = true;
  for (int n = 0; n <= N; ++n) {
    if (arrays.log_z[n] < arrays.log_zc[n] - 1e-12) {
      rep.lower_bound_ok = false;
      break;
    }
  }
  if (!rep.lower_bound_ok)
    throw std::runtime_error("comparison_check: Zc <= Z violated (implementation bug)");
  rep.log_ratio = arrays.log_z[N] - arrays.log_zc[N];
  rep.fitted_C = std::expm1(rep.log_ratio) * std::exp(beta * env[N] + h) /
                 std::pow(static_cast<double>(N), 1.0 + alpha_plus);
  return rep;
}

}  // namespace pinlab
