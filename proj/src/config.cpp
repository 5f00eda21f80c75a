#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

#include "pinlab/experiment.hpp"

namespace pinlab {

const std::vector<std::string> kExperimentKinds = {
    "kernel-diagnostics", "homogeneous-curve", "exponent-fit",      "beta2",
    "second-moment",      "martingale",        "quenched-surface",  "contact-fraction",
    "marginal-convergence", "oracle-suite",
};

namespace {

using nlohmann::json;

/// SAX walker that rejects duplicate keys inside any object.
struct DupKeyChecker : json::json_sax_t {
  std::vector<std::set<std::string>> stack;
  std::string duplicate;

  bool key(string_t& val) override {
    if (!stack.empty() && !stack.back().insert(val).second) {
      duplicate = val;
      return false;
    }
    return true;
  }
  bool start_object(std::size_t) override {
    stack.emplace_back();
    return true;
  }
  bool end_object() override {
    stack.pop_back();
    return true;
  }
  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_array(std::size_t) override { return true; }
  bool end_array() override { return true; }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }
};

struct Validator {
  std::vector<std::string>& errors;

  void fail(const std::string& msg) { errors.push_back(msg); }

  void check_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) fail(where + ": unknown key '" + it.key() + "'");
    }
  }

  double number(const json& obj, const std::string& where, const std::string& key, double dflt,
                bool required = false) {
    if (!obj.contains(key)) {
      if (required) fail(where + "." + key + ": required field missing");
      return dflt;
    }
    if (!obj[key].is_number()) {
      fail(where + "." + key + ": expected a number");
      return dflt;
    }
    return obj[key].get<double>();
  }
};

}  // namespace

std::string config_hash(const nlohmann::json& config) {
  const std::string canon = config.dump();  // nlohmann objects are key-sorted
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

ParseOutcome parse_config(const std::string& text) {
  ParseOutcome out;
  {
    DupKeyChecker checker;
    if (!nlohmann::json::sax_parse(text, &checker)) {
      if (!checker.duplicate.empty())
        out.errors.push_back("duplicated key '" + checker.duplicate + "'");
      else
        out.errors.push_back("invalid JSON");
      return out;
    }
  }
  nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_object()) {
    out.errors.push_back("config must be a JSON object");
    return out;
  }

  Validator v{out.errors};
  ExperimentConfig cfg;
  cfg.echo = doc;

  v.check_keys(doc, "config", {"experiment", "model", "disorder", "params", "run"});

  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    v.fail("experiment: required string field missing");
  } else {
    cfg.kind = doc["experiment"].get<std::string>();
    if (std::find(kExperimentKinds.begin(), kExperimentKinds.end(), cfg.kind) ==
        kExperimentKinds.end())
      v.fail("experiment: unknown kind '" + cfg.kind + "'");
  }

  if (doc.contains("model")) {
    const auto& m = doc["model"];
    if (!m.is_object()) {
      v.fail("model: expected an object");
    } else {
      v.check_keys(m, "model", {"alpha", "L", "recurrent", "n_max", "tail_tolerance"});
      cfg.kernel.alpha = v.number(m, "model", "alpha", 0.5, true);
      if (m.contains("alpha") && m["alpha"].is_number() &&
          !(cfg.kernel.alpha > 0.0 && cfg.kernel.alpha < 1.0))
        v.fail("model.alpha: must lie in (0,1)");
      if (m.contains("recurrent")) {
        if (m["recurrent"].is_boolean())
          cfg.kernel.recurrent = m["recurrent"].get<bool>();
        else
          v.fail("model.recurrent: expected a boolean");
      }
      cfg.kernel.n_max = static_cast<int>(v.number(m, "model", "n_max", 100000));
      if (cfg.kernel.n_max < 1) v.fail("model.n_max: must be >= 1");
      cfg.kernel.tail_tolerance = v.number(m, "model", "tail_tolerance", 1e-2);
      if (!(cfg.kernel.tail_tolerance > 0)) v.fail("model.tail_tolerance: must be > 0");
      if (m.contains("L")) {
        const auto& L = m["L"];
        if (!L.is_object()) {
          v.fail("model.L: expected an object");
        } else {
          v.check_keys(L, "model.L", {"kind", "c", "p"});
          const std::string kind = L.contains("kind") && L["kind"].is_string()
                                       ? L["kind"].get<std::string>()
                                       : "constant";
          if (kind == "constant") {
            cfg.kernel.L = SlowlyVaryingSpec::constant(v.number(L, "model.L", "c", 1.0));
          } else if (kind == "log_power") {
            cfg.kernel.L = SlowlyVaryingSpec::log_power(v.number(L, "model.L", "c", 1.0),
                                                        v.number(L, "model.L", "p", 1.0));
          } else {
            v.fail("model.L.kind: must be 'constant' or 'log_power'");
          }
          if (!(cfg.kernel.L.c > 0)) v.fail("model.L.c: must be > 0");
        }
      }
    }
  } else if (cfg.kind != "oracle-suite") {
    v.fail("model: required section missing");
  }

  if (doc.contains("disorder")) {
    const auto& d = doc["disorder"];
    if (!d.is_object()) {
      v.fail("disorder: expected an object");
    } else {
      v.check_keys(d, "disorder", {"family", "seed_base"});
      cfg.has_disorder = true;
      const std::string fam =
          d.contains("family") && d["family"].is_string() ? d["family"].get<std::string>() : "";
      if (fam == "gaussian")
        cfg.disorder.family = DisorderFamily::Gaussian;
      else if (fam == "rademacher")
        cfg.disorder.family = DisorderFamily::Rademacher;
      else if (fam == "uniform")
        cfg.disorder.family = DisorderFamily::Uniform;
      else
        v.fail("disorder.family: must be 'gaussian', 'rademacher', or 'uniform'");
      cfg.disorder.seed_base =
          static_cast<std::uint64_t>(v.number(d, "disorder", "seed_base", 0));
    }
  }

  if (doc.contains("params")) {
    const auto& p = doc["params"];
    if (!p.is_object()) {
      v.fail("params: expected an object");
    } else {
      v.check_keys(p, "params",
                   {"beta", "beta_grid", "h_grid", "N_grid", "gamma", "m", "threshold",
                    "window"});
      cfg.beta = v.number(p, "params", "beta", 0.0);
      cfg.gamma = v.number(p, "params", "gamma", cfg.gamma);
      cfg.m = static_cast<int>(v.number(p, "params", "m", cfg.m));
      cfg.threshold_c = v.number(p, "params", "threshold", cfg.threshold_c);
      auto grid = [&](const char* key, auto& dst) {
        if (!p.contains(key)) return;
        if (!p[key].is_array()) {
          v.fail(std::string("params.") + key + ": expected an array");
          return;
        }
        for (const auto& x : p[key]) {
          if (!x.is_number()) {
            v.fail(std::string("params.") + key + ": expected numeric entries");
            return;
          }
          dst.push_back(
              static_cast<typename std::decay_t<decltype(dst)>::value_type>(x.get<double>()));
        }
        if (dst.empty()) v.fail(std::string("params.") + key + ": grid must not be empty");
      };
      grid("beta_grid", cfg.beta_grid);
      grid("h_grid", cfg.h_grid);
      grid("N_grid", cfg.N_grid);
      if (p.contains("window")) {
        if (p["window"].is_array() && p["window"].size() == 2 && p["window"][0].is_number() &&
            p["window"][1].is_number()) {
          cfg.window_min = p["window"][0].get<double>();
          cfg.window_max = p["window"][1].get<double>();
          if (!(cfg.window_min > 0 && cfg.window_min < cfg.window_max))
            v.fail("params.window: need 0 < u_min < u_max");
        } else {
          v.fail("params.window: expected [u_min, u_max]");
        }
      }
    }
  }

  if (doc.contains("run")) {
    const auto& r = doc["run"];
    if (!r.is_object()) {
      v.fail("run: expected an object");
    } else {
      v.check_keys(r, "run", {"n_samples", "workers", "out_dir"});
      cfg.n_samples = static_cast<int>(v.number(r, "run", "n_samples", cfg.n_samples));
      if (cfg.n_samples < 1) v.fail("run.n_samples: must be >= 1");
      cfg.workers = static_cast<unsigned>(v.number(r, "run", "workers", 1));
      if (r.contains("out_dir")) {
        if (r["out_dir"].is_string())
          cfg.out_dir = r["out_dir"].get<std::string>();
        else
          v.fail("run.out_dir: expected a string");
      }
    }
  }

  // Per-kind requirements.
  auto require_grid = [&](bool present, const char* what) {
    if (!present) v.fail(std::string("params.") + what + ": required for experiment '" +
                         cfg.kind + "'");
  };
  if (cfg.kind == "homogeneous-curve") require_grid(!cfg.h_grid.empty(), "h_grid");
  if (cfg.kind == "second-moment" || cfg.kind == "martingale" ||
      cfg.kind == "contact-fraction" || cfg.kind == "marginal-convergence" ||
      cfg.kind == "kernel-diagnostics")
    require_grid(!cfg.N_grid.empty(), "N_grid");
  if (cfg.kind == "quenched-surface") {
    require_grid(!cfg.beta_grid.empty(), "beta_grid");
    require_grid(!cfg.h_grid.empty(), "h_grid");
    require_grid(!cfg.N_grid.empty(), "N_grid");
  }
  const bool needs_disorder =
      cfg.kind == "beta2" || cfg.kind == "second-moment" || cfg.kind == "martingale" ||
      cfg.kind == "quenched-surface" || cfg.kind == "contact-fraction" ||
      cfg.kind == "marginal-convergence";
  if (needs_disorder && !cfg.has_disorder)
    v.fail("disorder: required section missing for experiment '" + cfg.kind + "'");

  if (!out.errors.empty()) return out;
  out.config = std::move(cfg);
  return out;
}

}  // namespace pinlab
