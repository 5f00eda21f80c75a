#include "pinlab/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "pinlab/common.hpp"
#include "pinlab/partition.hpp"

namespace pinlab {

BackwardWeights backward_weights(const Kernel& kernel, const Environment& env, double beta,
                                 double h, int N) {
  if (env.size() < N) throw std::invalid_argument("backward_weights: env shorter than N");
  if (N > kernel.n_max()) throw std::invalid_argument("backward_weights: N exceeds kernel n_max");
  BackwardWeights bw;
  bw.beta = beta;
  bw.h = h;
  bw.N = N;
  bw.log_z_to_end.assign(static_cast<std::size_t>(N) + 1, 0.0);

  const double* K = kernel.weights().data();
  std::vector<double> wexp(static_cast<std::size_t>(N) + 1, 0.0);
  for (int j = 1; j <= N; ++j) wexp[j] = std::exp(beta * env[j] + h);

  // zb[j] = Zb_j * e^{-shift}; same rescaling scheme as the forward pass.
  std::vector<double> zb(static_cast<std::size_t>(N) + 1, 0.0);
  double shift = 0.0;
  zb[N] = 1.0;  // empty segment, P(tau_1 > 0) := 1
  for (int k = N - 1; k >= 0; --k) {
    double s = kernel.tail(N - k) * std::exp(-shift);
    for (int j = k + 1; j <= N; ++j) s += K[j - k] * wexp[j] * zb[j];
    zb[k] = s;
    bw.log_z_to_end[k] = std::log(s) + shift;
    if (s > 1e250 || s < 1e-250) {
      const double f = 1.0 / s;
      for (int j = k; j <= N; ++j) zb[j] *= f;
      shift += std::log(s);
    }
  }
  return bw;
}

ContactSet sample_path(const BackwardWeights& bw, const Kernel& kernel, const Environment& env,
                       std::uint64_t seed) {
  Rng rng(seed);
  const int N = bw.N;
  ContactSet cs;
  cs.points.push_back(0);
  int k = 0;
  while (k < N) {
    const double u = rng.uniform();
    double acc = 0.0;
    int chosen = -1;
    for (int j = k + 1; j <= N; ++j) {
      acc += std::exp(kernel.log_k(j - k) + bw.beta * env[j] + bw.h + bw.log_z_to_end[j] -
                      bw.log_z_to_end[k]);
      if (u < acc) {
        chosen = j;
        break;
      }
    }
    if (chosen < 0) break;  // residual mass: no further contact before N
    cs.points.push_back(chosen);
    k = chosen;
  }
  return cs;
}

double ContactLaw::prob_count_above(double threshold) const {
  double s = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j)
    if (static_cast<double>(j) > threshold) s += q[j];
  return s;
}

double ContactLaw::mean() const {
  double s = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) s += static_cast<double>(j) * q[j];
  return s;
}

ContactLaw contact_count_law(const Kernel& kernel, const Environment& env, double beta, double h,
                             int N) {
  if (N > 512) throw std::invalid_argument("contact_count_law: N must be <= 512");
  if (env.size() < N) throw std::invalid_argument("contact_count_law: env shorter than N");

  const double* K = kernel.weights().data();
  std::vector<double> wexp(static_cast<std::size_t>(N) + 1, 0.0);
  for (int j = 1; j <= N; ++j) wexp[j] = std::exp(beta * env[j] + h);

  // row[n] = Zc(last contact n, exactly j contacts) * e^{-shift_j}; one row
  // per count, rescaled by its maximum to stay in range.
  std::vector<double> row(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> next(static_cast<std::size_t>(N) + 1, 0.0);
  row[0] = 1.0;
  double shift = 0.0;

  LogAccumulator norm;
  std::vector<double> log_qt(static_cast<std::size_t>(N) + 1, kNegInf);
  log_qt[0] = std::log(kernel.tail(N));  // zero contacts

  for (int j = 1; j <= N; ++j) {
    double row_max = 0.0;
    for (int n = j; n <= N; ++n) {
      double s = 0.0;
      for (int k = j - 1; k < n; ++k) s += row[k] * K[n - k];
      const double val = wexp[n] * s;
      next[n] = val;
      if (val > row_max) row_max = val;
    }
    for (int n = 0; n < j; ++n) next[n] = 0.0;
    if (row_max <= 0.0) break;  // count j unreachable (cannot happen for j <= N)
    // close row j against the right boundary
    double t = next[N];  // last contact at N, P(tau_1 > 0) := 1
    for (int n = j; n < N; ++n) t += next[n] * kernel.tail(N - n);
    log_qt[j] = std::log(t) + shift;
    // rescale for the next count level
    const double f = 1.0 / row_max;
    for (int n = 0; n <= N; ++n) row[n] = next[n] * f;
    shift += std::log(row_max);
  }

  for (int j = 0; j <= N; ++j) norm.add(log_qt[j]);
  ContactLaw law;
  law.N = N;
  law.log_z = norm.value();
  law.q.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int j = 0; j <= N; ++j) law.q[j] = std::exp(log_qt[j] - law.log_z);
  return law;
}

ContactFractionReport contact_fraction_experiment(const Kernel& kernel,
                                                  const DisorderSpec& disorder, double beta,
                                                  double gamma, const std::vector<int>& N_grid,
                                                  int n_samples, double threshold_c,
                                                  int exact_limit, int n_paths,
                                                  unsigned workers) {
  const double h = -log_mgf(disorder, beta);
  ContactFractionReport rep;
  rep.beta = beta;
  rep.gamma = gamma;
  rep.threshold_c = threshold_c;
  for (int N : N_grid) {
    const double cut = std::pow(static_cast<double>(N), gamma);
    std::vector<double> probs(static_cast<std::size_t>(n_samples), 0.0);
    const bool exact = N <= exact_limit;
    parallel_for(static_cast<std::size_t>(n_samples), workers, [&](std::size_t i) {
      const Environment env = sample_environment(disorder, N, i);
      if (exact) {
        probs[i] = contact_count_law(kernel, env, beta, h, N).prob_count_above(cut);
      } else {
        const BackwardWeights bw = backward_weights(kernel, env, beta, h, N);
        int hits = 0;
        for (int p = 0; p < n_paths; ++p) {
          const std::uint64_t seed = mix_seed(mix_seed(disorder.seed_base ^ 0x5eedULL, i),
                                              static_cast<std::uint64_t>(p));
          const ContactSet cs = sample_path(bw, kernel, env, seed);
          if (static_cast<double>(cs.count_in_1_to_n()) > cut) ++hits;
        }
        probs[i] = static_cast<double>(hits) / static_cast<double>(n_paths);
      }
    });
    const Estimate est = mean_and_stderr(probs);
    int above = 0;
    for (double p : probs)
      if (p > threshold_c) ++above;
    rep.cells.push_back({N, est.value, est.stderr_,
                         static_cast<double>(above) / static_cast<double>(n_samples), exact});
  }
  return rep;
}

MarginalLaw finite_marginal_law(const Kernel& kernel, const Environment& env, double beta, int m,
                                int N) {
  if (m < 0 || m > 16) throw std::invalid_argument("finite_marginal_law: m must lie in [0,16]");
  if (N < m) throw std::invalid_argument("finite_marginal_law: N must be >= m");
  const double h = -log_mgf(env.spec, beta);
  const BackwardWeights bw = backward_weights(kernel, env, beta, h, N);

  // log R[j]: weight of "next contact after m" given a contact at j <= m.
  std::vector<double> log_r(static_cast<std::size_t>(m) + 1, kNegInf);
  for (int j = 0; j <= m; ++j) {
    LogAccumulator acc;
    acc.add(std::log(kernel.tail(N - j)));
    for (int i = m + 1; i <= N; ++i)
      acc.add(kernel.log_k(i - j) + beta * env[i] + h + bw.log_z_to_end[i]);
    log_r[j] = acc.value();
  }

  MarginalLaw law;
  law.m = m;
  law.prob.assign(1ULL << m, 0.0);
  std::vector<double> logw(1ULL << m, kNegInf);
  LogAccumulator norm;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    double lw = 0.0;
    int last = 0;
    bool feasible = true;
    for (int n = 1; n <= m; ++n) {
      if (mask & (1ULL << (n - 1))) {
        const double lk = kernel.log_k(n - last);
        if (lk == kNegInf) {
          feasible = false;
          break;
        }
        lw += lk + beta * env[n] + h;
        last = n;
      }
    }
    if (!feasible) continue;
    lw += log_r[last];
    logw[mask] = lw;
    norm.add(lw);
  }
  const double log_z = norm.value();
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask)
    if (logw[mask] != kNegInf) law.prob[mask] = std::exp(logw[mask] - log_z);
  return law;
}

double total_variation(const MarginalLaw& a, const MarginalLaw& b) {
  if (a.m != b.m) throw std::invalid_argument("total_variation: mismatched supports");
  double s = 0.0;
  for (std::size_t i = 0; i < a.prob.size(); ++i) s += std::abs(a.prob[i] - b.prob[i]);
  return 0.5 * s;
}

}  // namespace pinlab
