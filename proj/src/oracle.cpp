#include "pinlab/oracle.hpp"

#include <cmath>

#include "pinlab/common.hpp"
#include "pinlab/partition.hpp"
#include "pinlab/sampler.hpp"

namespace pinlab {

OracleSuiteResult run_oracle_suite(int n_tuples, int max_n, double tol, std::uint64_t seed) {
  OracleSuiteResult result;
  Rng rng(seed);

  const double alphas[] = {0.3, 0.5, 0.7};
  Kernel kernels[] = {
      build_kernel({.alpha = 0.3, .n_max = 64}),
      build_kernel({.alpha = 0.5, .n_max = 64}),
      build_kernel({.alpha = 0.7, .n_max = 64}),
  };
  (void)alphas;

  // 1) recursion vs exhaustive enumeration, free and constrained
  {
    double worst = 0.0;
    for (int t = 0; t < n_tuples; ++t) {
      const Kernel& ker = kernels[rng.next_u64() % 3];
      const double beta = rng.uniform();
      const double h = 2.0 * rng.uniform() - 1.0;
      Environment env;
      env.omega.assign(static_cast<std::size_t>(max_n) + 1, 0.0);
      for (int n = 1; n <= max_n; ++n) env.omega[n] = rng.gaussian();
      const auto arrays = log_partition(ker, env, beta, h, max_n, /*with_free=*/true);
      for (int N = 1; N <= max_n; ++N) {
        const auto [bf_free, bf_con] = brute_force_partition(ker, env, beta, h, N);
        worst = std::max(worst, std::abs(arrays.log_z[N] - bf_free));
        worst = std::max(worst, std::abs(arrays.log_zc[N] - bf_con));
      }
    }
    result.checks.push_back({"recursion vs brute force (free + constrained)", worst < tol, worst});
  }

  // 2) deconvolution round trip: renewal of K' reproduces u'
  {
    const Kernel ker = build_kernel({.alpha = 0.3, .n_max = 512});
    const MassFunction mf = renewal_mass(ker, 512);
    const auto up = intersection_mass(mf);
    const auto kp = deconvolve_interarrival(up);
    double worst = 0.0;
    std::vector<double> re(up.size(), 0.0);
    re[0] = 1.0;
    for (std::size_t n = 1; n < up.size(); ++n) {
      double s = 0.0;
      for (std::size_t k = 1; k <= n; ++k) s += kp[k] * re[n - k];
      re[n] = s;
      worst = std::max(worst, std::abs(re[n] - up[n]));
    }
    result.checks.push_back({"deconvolution round trip", worst < tol, worst});
  }

  // 3) forward/backward composition at every split point
  {
    const Kernel ker = build_kernel({.alpha = 0.3, .n_max = 256});
    const int N = 128;
    Environment env;
    env.omega.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int n = 1; n <= N; ++n) env.omega[n] = rng.gaussian();
    const double beta = 0.4, h = 0.1;
    const auto arrays = log_partition(ker, env, beta, h, N, /*with_free=*/true);
    const BackwardWeights bw = backward_weights(ker, env, beta, h, N);
    double worst = std::abs(bw.log_z_to_end[0] - arrays.log_z[N]);
    for (int split = 1; split < N; ++split) {
      LogAccumulator acc;
      for (int j = 0; j <= split; ++j) {
        acc.add(arrays.log_zc[j] + std::log(ker.tail(N - j)));
        for (int i = split + 1; i <= N; ++i)
          acc.add(arrays.log_zc[j] + ker.log_k(i - j) + beta * env[i] + h +
                  bw.log_z_to_end[i]);
      }
      worst = std::max(worst, std::abs(acc.value() - arrays.log_z[N]));
    }
    result.checks.push_back({"forward/backward composition identity", worst < tol, worst});
  }

  for (const auto& c : result.checks) (c.passed ? result.n_passed : result.n_failed)++;
  return result;
}

}  // namespace pinlab
