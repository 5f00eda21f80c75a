// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here on purpose; do not relax them to make
// a criterion pass.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pinlab/homogeneous.hpp"
#include "pinlab/intersection.hpp"
#include "pinlab/oracle.hpp"
#include "pinlab/partition.hpp"
#include "pinlab/sampler.hpp"

using namespace pinlab;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool passed, const std::string& detail) {
  std::printf("[%s] %2d %s (%s)\n", passed ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

const DisorderSpec kGauss{.family = DisorderFamily::Gaussian, .seed_base = 2026};

// 1. Recursion vs brute-force enumeration, N <= 14, 50 random tuples, 1e-10.
void criterion_oracle() {
  const OracleSuiteResult res = run_oracle_suite();
  double worst = 0.0;
  for (const auto& c : res.checks) worst = std::max(worst, c.worst_error);
  report(1, "oracle equivalence, recursion vs enumeration", res.all_passed(),
         "worst error " + fmt(worst) + " over " + std::to_string(res.checks.size()) + " checks");
}

// 2. Doney ratio within [0.9, 1.1] at n = 1e5 and improving from n = 1e3.
void criterion_doney(const Kernel& ker, const MassFunction& mf) {
  const double r3 = mf.u[1000] / doney_asymptote(ker, 1000);
  const double r5 = mf.u[100000] / doney_asymptote(ker, 100000);
  const bool ok = r5 > 0.9 && r5 < 1.1 && std::abs(r5 - 1.0) < std::abs(r3 - 1.0);
  report(2, "Doney asymptote for u_n, alpha = 0.3", ok,
         "ratio " + fmt(r5) + " at 1e5, " + fmt(r3) + " at 1e3");
}

// 3. Annealed critical exponent 1 v 1/alpha over u in [1e-4, 1e-2].
void criterion_exponent() {
  struct Row {
    double alpha, target, tol;
  };
  bool ok = true;
  std::string detail;
  for (const Row r : {Row{0.5, 2.0, 0.2}, Row{0.3, 10.0 / 3.0, 0.35}, Row{0.75, 4.0 / 3.0, 0.15}}) {
    const Kernel ker = build_kernel({.alpha = r.alpha, .n_max = 4000});
    const double h_c = critical_point(ker);
    std::vector<double> hs;
    for (int i = 0; i < 25; ++i)
      hs.push_back(h_c + 1e-4 * std::pow(100.0, i / 24.0));
    const FitResult fit = exponent_fit(free_energy_curve(ker, hs), h_c, 1e-4, 1e-2);
    ok = ok && std::abs(fit.slope - r.target) < r.tol;
    if (!detail.empty()) detail += ", ";
    detail += "alpha " + fmt(r.alpha) + ": " + fmt(fit.slope);
  }
  report(3, "annealed exponent fits 1 v 1/alpha", ok, detail);
}

// 4. Martingale mean 1 at h = -lambda(beta), N = 1024, 1e4 samples, 3 sigma.
void criterion_martingale(const Kernel& ker, double beta) {
  const int n_env = 10000, N = 1024;
  std::vector<double> z(n_env, 0.0);
  for (int i = 0; i < n_env; ++i) {
    const Environment env = sample_environment(kGauss, N, static_cast<std::uint64_t>(i));
    z[i] = martingale_trajectory(ker, kGauss, beta, env)[N];
  }
  const Estimate e = mean_and_stderr(z);
  const bool ok = std::abs(e.value - 1.0) < 3.0 * e.stderr_;
  report(4, "martingale mean E[Z_N] = 1", ok,
         "mean " + fmt(e.value) + " +- " + fmt(e.stderr_) + " at beta " + fmt(beta));
}

// 5. Second moment bounded below beta2, growing above; MC agreement at N=512.
// Known red: at 0.9 beta2 the exact ratio decays like N^{-0.4} and sits at
// ~1.022 for 4096/2048 (it crosses 1.02 near N = 8192). The bound stays
// pinned rather than being loosened to fit the reachable sizes.
void criterion_second_moment(const Kernel& ker, const IntersectionData& inter, double b2) {
  const std::vector<int> Ns = {512, 2048, 4096};
  const double c_lo = mgf_gap(kGauss.family, 0.9 * b2);
  const double c_hi = mgf_gap(kGauss.family, 1.1 * b2);
  const auto w_lo = second_moment_exact_log(inter.k_prime, c_lo, Ns);
  const auto w_hi = second_moment_exact_log(inter.k_prime, c_hi, Ns);
  const double ratio_lo = std::exp(w_lo[2] - w_lo[1]);
  const double ratio_hi = std::exp(w_hi[2] - w_hi[1]);

  const int n_env = 10000, N = 512;
  const double beta = 0.9 * b2;
  std::vector<double> z2(n_env, 0.0);
  for (int i = 0; i < n_env; ++i) {
    const Environment env = sample_environment(kGauss, N, 20000 + static_cast<std::uint64_t>(i));
    const double z = martingale_trajectory(ker, kGauss, beta, env)[N];
    z2[i] = z * z;
  }
  const Estimate e = mean_and_stderr(z2);
  const double exact = std::exp(w_lo[0]);
  const bool mc_ok = std::abs(e.value - exact) < 3.0 * e.stderr_;

  const bool ok = ratio_lo < 1.02 && ratio_hi > 1.05 && mc_ok;
  report(5, "second-moment criterion around beta2", ok,
         "W ratio " + fmt(ratio_lo) + " below / " + fmt(ratio_hi) + " above; MC " + fmt(e.value) +
             " +- " + fmt(e.stderr_) + " vs exact " + fmt(exact));
}

// 6. beta2 dichotomy across alpha and L, with the threshold identity.
void criterion_beta2(double b2_03, double p_return_03) {
  const Kernel k07 = build_kernel({.alpha = 0.7, .n_max = 2000});
  const double b2_07 = beta2(kGauss, k07);

  const double residual = mgf_gap(kGauss.family, b2_03) + std::log(p_return_03);

  const Kernel k05 = build_kernel({.alpha = 0.5, .n_max = 2000});
  const double b2_05 = beta2(kGauss, k05);

  const Kernel k05log = build_kernel(
      {.alpha = 0.5, .L = SlowlyVaryingSpec::log_power(1.0, 1.0), .n_max = 20000});
  const double b2_05log = beta2(kGauss, k05log);

  const bool ok = b2_07 == 0.0 && b2_03 > 0.0 && std::abs(residual) < 1e-10 && b2_05 == 0.0 &&
                  b2_05log > 0.0;
  report(6, "beta2 regime dichotomy", ok,
         "alpha 0.7: " + fmt(b2_07) + ", alpha 0.3: " + fmt(b2_03) + " residual " +
             fmt(residual) + ", alpha 0.5 const: " + fmt(b2_05) + ", log-power: " +
             fmt(b2_05log));
}

// 7. Jensen: quenched <= annealed + 3 stderr on a 4x4 grid.
void criterion_jensen() {
  const int N = 1024;
  const Kernel ker = build_kernel({.alpha = 0.3, .n_max = N});
  bool ok = true;
  double worst = -1e300;
  for (double beta : {0.2, 0.5, 0.8, 1.1}) {
    for (double h : {-0.2, 0.0, 0.2, 0.5}) {
      const Estimate q = quenched_free_energy(ker, kGauss, beta, h, N, 300);
      const double a = annealed_free_energy(ker, kGauss, beta, h);
      const double slack = q.value - a - 3.0 * q.stderr_;
      worst = std::max(worst, slack);
      if (slack > 0.0) ok = false;
    }
  }
  report(7, "Jensen domination on the (beta, h) grid", ok,
         "worst quenched - annealed - 3se = " + fmt(worst));
}

// 8. Contact fraction at h = -lambda(beta): gamma = 0.2 grows along
// {256, 1024, 4096} and exceeds 0.9 at 4096; gamma = 0.6 decreases.
// Known red: the gamma = 0.2 deficit 1 - E[P_N] decays like N^{-0.1}
// (measured ~0.88 N^{-0.1}), so the 0.9 level needs N ~ 3e9. The level stays
// pinned; the trend checks are the meaningful finite-size content.
void criterion_contact_fraction(const Kernel& ker, double beta) {
  const std::vector<int> grid = {256, 1024, 4096};
  const ContactFractionReport low =
      contact_fraction_experiment(ker, kGauss, beta, 0.2, grid, 100, 0.5);
  const ContactFractionReport high =
      contact_fraction_experiment(ker, kGauss, beta, 0.6, grid, 100, 0.5);
  const bool inc = low.cells[1].mean_prob > low.cells[0].mean_prob &&
                   low.cells[2].mean_prob > low.cells[1].mean_prob;
  const bool top = low.cells[2].mean_prob > 0.9;
  // the true gamma = 0.6 probabilities fall below MC resolution (1/n_paths)
  // past N = 256, so the decrease is checked nonincreasing with a strict
  // overall drop
  const bool dec = high.cells[1].mean_prob <= high.cells[0].mean_prob &&
                   high.cells[2].mean_prob <= high.cells[1].mean_prob &&
                   high.cells[2].mean_prob < high.cells[0].mean_prob;
  report(8, "contact fraction trends at the annealed critical point", inc && top && dec,
         "gamma 0.2: " + fmt(low.cells[0].mean_prob) + " -> " + fmt(low.cells[1].mean_prob) +
             " -> " + fmt(low.cells[2].mean_prob) + "; gamma 0.6: " +
             fmt(high.cells[0].mean_prob) + " -> " + fmt(high.cells[1].mean_prob) + " -> " +
             fmt(high.cells[2].mean_prob));
}

// 9. TV between the m = 5 marginal at N and 2N decreases over {128, 256, 512}.
void criterion_marginals(const Kernel& ker, double beta) {
  const Environment env = sample_environment(kGauss, 1024, 0);
  std::vector<double> tv;
  for (int N : {128, 256, 512}) {
    Environment a = env, b = env;
    a.omega.resize(static_cast<std::size_t>(N) + 1);
    b.omega.resize(static_cast<std::size_t>(2 * N) + 1);
    tv.push_back(total_variation(finite_marginal_law(ker, a, beta, 5, N),
                                 finite_marginal_law(ker, b, beta, 5, 2 * N)));
  }
  const bool ok = tv[1] < tv[0] && tv[2] < tv[1];
  report(9, "weak-convergence diagnostic, m = 5 marginals", ok,
         "TV " + fmt(tv[0]) + " -> " + fmt(tv[1]) + " -> " + fmt(tv[2]));
}

// 10. Count-law mean equals d/dh log Z_N to 1e-4 relative, 10 environments.
void criterion_gibbs(const Kernel& ker) {
  const int N = 256;
  const double beta = 0.5, h = 0.1, step = 1e-5;
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Environment env = sample_environment(kGauss, N, 700 + static_cast<std::uint64_t>(i));
    const ContactLaw law = contact_count_law(ker, env, beta, h, N);
    const double up = contact_count_law(ker, env, beta, h + step, N).log_z;
    const double dn = contact_count_law(ker, env, beta, h - step, N).log_z;
    const double deriv = (up - dn) / (2.0 * step);
    const double rel = std::abs(law.mean() - deriv) / deriv;
    worst = std::max(worst, rel);
    if (rel > 1e-4) ok = false;
  }
  report(10, "Gibbs identity, count mean vs d log Z / dh", ok,
         "worst relative error " + fmt(worst));
}

}  // namespace

int main() {
  // shared heavy inputs: alpha = 0.3 kernel to 1e5, its mass function, the
  // intersection renewal, and the gaussian beta2 threshold
  const Kernel ker03 = build_kernel({.alpha = 0.3, .n_max = 100000});
  const MassFunction mf03 = renewal_mass(ker03, 100000);
  IntersectionData inter;
  inter.u_prime = intersection_mass(mf03);
  inter.k_prime = deconvolve_interarrival(inter.u_prime);
  const ValueWithBracket m = expected_intersection_count(inter.u_prime, 0.3, ker03.L());
  inter.m = m.value;
  inter.m_halfwidth = m.halfwidth;
  inter.p_return = return_probability(inter.m);
  const double b2 = beta2(kGauss, inter.p_return);
  std::printf("shared: m = %.6f, p' = %.6f, beta2 = %.6f\n", inter.m, inter.p_return, b2);

  criterion_oracle();
  criterion_doney(ker03, mf03);
  criterion_exponent();
  criterion_martingale(ker03, 0.5 * b2);
  criterion_second_moment(ker03, inter, b2);
  criterion_beta2(b2, inter.p_return);
  criterion_jensen();
  criterion_contact_fraction(ker03, 0.5 * b2);
  criterion_marginals(ker03, 0.5 * b2);
  criterion_gibbs(ker03);

  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
