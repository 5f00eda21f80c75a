// pinlab: reproducible experiments on disordered pinning models over
// power-law renewal processes.
//
//   pinlab run <config.json> [--workers K] [--out DIR]
//   pinlab oracle-suite
//   pinlab plot <result.json>
//
// Environment overrides: PINLAB_OUT_DIR, PINLAB_WORKERS.
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pinlab/experiment.hpp"
#include "pinlab/oracle.hpp"
#include "pinlab/svg.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int cmd_run(const std::string& config_path, int workers_flag, const std::string& out_flag) {
  std::string text;
  try {
    text = read_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  pinlab::ParseOutcome parsed = pinlab::parse_config(text);
  if (!parsed.ok()) {
    std::cerr << "config validation failed:\n";
    for (const auto& e : parsed.errors) std::cerr << "  - " << e << "\n";
    return 1;
  }
  pinlab::ExperimentConfig cfg = *parsed.config;
  if (workers_flag >= 0) cfg.workers = static_cast<unsigned>(workers_flag);
  if (!out_flag.empty()) cfg.out_dir = out_flag;
  if (const char* env = std::getenv("PINLAB_WORKERS"); env && workers_flag < 0)
    cfg.workers = static_cast<unsigned>(std::atoi(env));
  if (const char* env = std::getenv("PINLAB_OUT_DIR"); env && out_flag.empty())
    cfg.out_dir = env;

  try {
    const pinlab::ExperimentResult result = pinlab::run_experiment(cfg);
    const auto files = pinlab::emit_outputs(result, cfg.out_dir);
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    if (result.payload.contains("summary"))
      std::cout << "summary: " << result.payload["summary"].dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_oracle_suite() {
  try {
    const pinlab::OracleSuiteResult res = pinlab::run_oracle_suite();
    for (const auto& c : res.checks)
      std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
                << " (worst error " << c.worst_error << ")\n";
    std::cout << res.n_passed << " passed, " << res.n_failed << " failed\n";
    return res.all_passed() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_plot(const std::string& result_path) {
  try {
    pinlab::ExperimentResult result;
    result.payload = nlohmann::json::parse(read_file(result_path));
    const std::string svg = pinlab::render_result_svg(result);
    if (svg.empty()) {
      std::cerr << "error: result carries no plot spec\n";
      return 1;
    }
    const std::string out = result_path.substr(0, result_path.rfind('.')) + ".svg";
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    f << svg;
    std::cout << "wrote " << out << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disordered pinning model laboratory"};
  app.require_subcommand(1);

  std::string config_path, result_path, out_dir;
  int workers = -1;

  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--workers", workers, "worker thread count (0 = hardware)");
  run->add_option("--out", out_dir, "output directory");

  app.add_subcommand("oracle-suite", "run the brute-force equivalence checks");

  auto* plot = app.add_subcommand("plot", "re-render the SVG plot for a result.json");
  plot->add_option("result", result_path, "result file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, workers, out_dir);
  if (app.get_subcommand("oracle-suite")->parsed()) return cmd_oracle_suite();
  if (plot->parsed()) return cmd_plot(result_path);
  return 1;
}
