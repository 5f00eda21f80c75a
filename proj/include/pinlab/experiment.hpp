#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinlab/disorder.hpp"
#include "pinlab/kernel.hpp"

namespace pinlab {

inline constexpr const char* kLibraryVersion = "0.1.0";

extern const std::vector<std::string> kExperimentKinds;

struct ExperimentConfig {
  std::string kind;
  KernelSpec kernel;
  DisorderSpec disorder;
  bool has_disorder = false;

  double beta = 0.0;
  std::vector<double> beta_grid;
  std::vector<double> h_grid;
  std::vector<int> N_grid;
  double gamma = 0.2;
  int m = 5;
  double threshold_c = 0.5;
  double window_min = 1e-4;
  double window_max = 1e-2;

  int n_samples = 100;
  unsigned workers = 1;
  std::string out_dir = "out";

  nlohmann::json echo;  // parsed document, used for hashing and result echo
};

struct ParseOutcome {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;  // all validation errors, not just the first
  bool ok() const { return errors.empty() && config.has_value(); }
};

/// Parses and validates a JSON experiment config. Rejects duplicate keys,
/// unknown keys, unknown experiment kinds, and out-of-range fields.
ParseOutcome parse_config(const std::string& text);

/// FNV-1a hash of the canonical (key-sorted) dump; stable under key reordering.
std::string config_hash(const nlohmann::json& config);

struct ExperimentResult {
  nlohmann::json payload;  // config echo, columns, cells, plot spec, metadata
};

/// Dispatches to the owning module; Monte Carlo cells are parallelized over
/// sample indices with per-index seeds and aggregated in fixed order, so the
/// numeric payload is independent of the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes result.json, result.csv, and (for curve-like kinds) an SVG plot
/// into `dir`. File names embed the experiment kind and the config hash.
/// All writes go through a temp file plus rename. Returns the file paths.
std::vector<std::string> emit_outputs(const ExperimentResult& result, const std::string& dir);

/// Renders the SVG plot for a result that carries a plot spec.
std::string render_result_svg(const ExperimentResult& result);

}  // namespace pinlab
