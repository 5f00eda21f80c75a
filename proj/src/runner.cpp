#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pinlab/experiment.hpp"
#include "pinlab/homogeneous.hpp"
#include "pinlab/intersection.hpp"
#include "pinlab/oracle.hpp"
#include "pinlab/partition.hpp"
#include "pinlab/sampler.hpp"

namespace pinlab {

namespace {

using nlohmann::json;

json plot_spec(const std::string& x, const std::string& y, bool logx, bool logy,
               const std::string& title) {
  return json{{"x", x}, {"y", y}, {"logx", logx}, {"logy", logy}, {"title", title}};
}

struct Cells {
  std::vector<std::string> columns;
  json rows = json::array();

  void push(std::initializer_list<std::pair<std::string, json>> kv) {
    json row = json::object();
    for (const auto& [k, v] : kv) {
      row[k] = v;
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    }
    rows.push_back(std::move(row));
  }
};

void run_kernel_diagnostics(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  const int top = *std::max_element(cfg.N_grid.begin(), cfg.N_grid.end());
  const MassFunction mf = renewal_mass(ker, top);
  for (int n : cfg.N_grid) {
    const double dn = doney_asymptote(ker, n);
    cells.push({{"n", n},
                {"u_n", mf.u[n]},
                {"doney", dn},
                {"ratio", mf.u[n] / dn},
                {"tail_prob", ker.tail(std::min(n, ker.n_max()))}});
  }
  payload["plot"] = plot_spec("n", "ratio", true, false, "u_n / Doney asymptote");
}

void run_homogeneous_curve(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  for (double h : cfg.h_grid) cells.push({{"h", h}, {"F", free_energy(ker, h)}});
  payload["plot"] = plot_spec("h", "F", false, false, "homogeneous free energy");
}

void run_exponent_fit(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  const double h_c = critical_point(ker);
  const int n_points = 25;
  std::vector<double> hs;
  const double lmin = std::log(cfg.window_min), lmax = std::log(cfg.window_max);
  for (int i = 0; i < n_points; ++i)
    hs.push_back(h_c + std::exp(lmin + (lmax - lmin) * i / (n_points - 1)));
  const FreeEnergyCurve curve = free_energy_curve(ker, hs);
  for (std::size_t i = 0; i < hs.size(); ++i)
    cells.push({{"u", hs[i] - h_c}, {"F", curve.F[i]}});
  const FitResult fit = exponent_fit(curve, h_c, cfg.window_min, cfg.window_max);
  payload["summary"] = {{"slope", fit.slope},
                        {"stderr", fit.stderr_},
                        {"expected", std::max(1.0, 1.0 / ker.alpha())}};
  payload["plot"] = plot_spec("u", "F", true, true,
                              "log F vs log(h-h_c), slope " + std::to_string(fit.slope));
}

void run_beta2(const ExperimentConfig& cfg, Cells& cells, json&) {
  const Kernel ker = build_kernel(cfg.kernel);
  if (!is_transient(ker.alpha(), ker.L())) {
    cells.push({{"m", nullptr}, {"m_halfwidth", nullptr}, {"p_return", 1.0}, {"beta2", 0.0}});
    return;
  }
  const IntersectionData data = analyze_intersection(ker, ker.n_max());
  const double b2 = beta2(cfg.disorder, data.p_return);
  cells.push({{"m", data.m},
              {"m_halfwidth", data.m_halfwidth},
              {"p_return", data.p_return},
              {"beta2", std::isinf(b2) ? json("infinity") : json(b2)}});
}

void run_second_moment(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  const int top = *std::max_element(cfg.N_grid.begin(), cfg.N_grid.end());
  const IntersectionData data = analyze_intersection(ker, std::min(ker.n_max(), top));
  std::vector<double> betas = cfg.beta_grid.empty() ? std::vector<double>{cfg.beta}
                                                    : cfg.beta_grid;
  std::vector<int> Ns = cfg.N_grid;
  std::sort(Ns.begin(), Ns.end());
  for (double b : betas) {
    const double c = mgf_gap(cfg.disorder.family, b);
    const auto logw = second_moment_exact_log(data.k_prime, c, Ns);
    for (std::size_t i = 0; i < Ns.size(); ++i)
      cells.push({{"beta", b}, {"N", Ns[i]}, {"log_W", logw[i]}, {"W", std::exp(logw[i])}});
  }
  payload["plot"] = plot_spec("N", "W", true, true, "exact second moment E[Z_N^2]");
}

void run_martingale(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  std::vector<int> Ns = cfg.N_grid;
  std::sort(Ns.begin(), Ns.end());
  const int top = Ns.back();
  std::vector<std::vector<double>> z_at(Ns.size(),
                                        std::vector<double>(cfg.n_samples, 0.0));
  parallel_for(static_cast<std::size_t>(cfg.n_samples), cfg.workers, [&](std::size_t i) {
    const Environment env = sample_environment(cfg.disorder, top, i);
    const auto zn = martingale_trajectory(ker, cfg.disorder, cfg.beta, env);
    for (std::size_t g = 0; g < Ns.size(); ++g) z_at[g][i] = zn[Ns[g]];
  });
  for (std::size_t g = 0; g < Ns.size(); ++g) {
    const Estimate e = mean_and_stderr(z_at[g]);
    cells.push({{"N", Ns[g]}, {"mean_Z", e.value}, {"stderr", e.stderr_}});
  }
  payload["plot"] = plot_spec("N", "mean_Z", true, false, "martingale mean E[Z_N] at h=-lambda");
}

void run_quenched_surface(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  const int N = cfg.N_grid.front();
  for (double b : cfg.beta_grid) {
    for (double h : cfg.h_grid) {
      const Estimate q = quenched_free_energy(ker, cfg.disorder, b, h, N, cfg.n_samples,
                                              cfg.workers);
      const double a = annealed_free_energy(ker, cfg.disorder, b, h);
      cells.push({{"beta", b},
                  {"h", h},
                  {"quenched", q.value},
                  {"stderr", q.stderr_},
                  {"annealed", a}});
    }
  }
  payload["plot"] = plot_spec("h", "quenched", false, false, "quenched free-energy estimates");
}

void run_contact_fraction(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  const ContactFractionReport rep =
      contact_fraction_experiment(ker, cfg.disorder, cfg.beta, cfg.gamma, cfg.N_grid,
                                  cfg.n_samples, cfg.threshold_c, 512, 200, cfg.workers);
  for (const auto& c : rep.cells)
    cells.push({{"N", c.N},
                {"mean_prob", c.mean_prob},
                {"stderr", c.stderr_},
                {"frac_above_c", c.frac_above_c},
                {"exact", c.exact}});
  payload["plot"] = plot_spec("N", "mean_prob", true, false, "E[P_N(count > N^gamma)]");
}

void run_marginal_convergence(const ExperimentConfig& cfg, Cells& cells, json& payload) {
  const Kernel ker = build_kernel(cfg.kernel);
  const int top = 2 * *std::max_element(cfg.N_grid.begin(), cfg.N_grid.end());
  const Environment env = sample_environment(cfg.disorder, top, 0);
  for (int N : cfg.N_grid) {
    Environment sub1 = env, sub2 = env;  // shared omega prefix
    sub1.omega.resize(static_cast<std::size_t>(N) + 1);
    sub2.omega.resize(static_cast<std::size_t>(2 * N) + 1);
    const MarginalLaw a = finite_marginal_law(ker, sub1, cfg.beta, cfg.m, N);
    const MarginalLaw b = finite_marginal_law(ker, sub2, cfg.beta, cfg.m, 2 * N);
    cells.push({{"N", N}, {"tv_N_2N", total_variation(a, b)}});
  }
  payload["plot"] = plot_spec("N", "tv_N_2N", true, true, "TV(law_N, law_2N), m-marginal");
}

void run_oracle(const ExperimentConfig&, Cells& cells, json& payload) {
  const OracleSuiteResult res = run_oracle_suite();
  for (const auto& c : res.checks)
    cells.push({{"check", c.name}, {"passed", c.passed}, {"worst_error", c.worst_error}});
  payload["summary"] = {{"passed", res.n_passed}, {"failed", res.n_failed}};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult result;
  json& payload = result.payload;
  payload["experiment"] = cfg.kind;
  payload["config"] = cfg.echo;
  payload["config_hash"] = config_hash(cfg.echo);
  payload["library_version"] = kLibraryVersion;
  payload["seeds"] = {{"seed_base", cfg.disorder.seed_base}, {"n_samples", cfg.n_samples}};

  Cells cells;
  if (cfg.kind == "kernel-diagnostics")
    run_kernel_diagnostics(cfg, cells, payload);
  else if (cfg.kind == "homogeneous-curve")
    run_homogeneous_curve(cfg, cells, payload);
  else if (cfg.kind == "exponent-fit")
    run_exponent_fit(cfg, cells, payload);
  else if (cfg.kind == "beta2")
    run_beta2(cfg, cells, payload);
  else if (cfg.kind == "second-moment")
    run_second_moment(cfg, cells, payload);
  else if (cfg.kind == "martingale")
    run_martingale(cfg, cells, payload);
  else if (cfg.kind == "quenched-surface")
    run_quenched_surface(cfg, cells, payload);
  else if (cfg.kind == "contact-fraction")
    run_contact_fraction(cfg, cells, payload);
  else if (cfg.kind == "marginal-convergence")
    run_marginal_convergence(cfg, cells, payload);
  else if (cfg.kind == "oracle-suite")
    run_oracle(cfg, cells, payload);
  else
    throw std::invalid_argument("run_experiment: unknown kind '" + cfg.kind + "'");

  payload["columns"] = cells.columns;
  payload["cells"] = std::move(cells.rows);
  payload["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace pinlab
