#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "pinlab/experiment.hpp"
#include "pinlab/svg.hpp"

namespace pinlab {

namespace {

using nlohmann::json;

/// Write-then-rename so an interrupted run never leaves a partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("emit_outputs: cannot write " + tmp.string());
    f << content;
    if (!f.good()) throw std::runtime_error("emit_outputs: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string cell_to_string(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string to_csv(const json& payload) {
  std::string out;
  const auto& columns = payload["columns"];
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ",";
    out += csv_quote(columns[i].get<std::string>());
  }
  out += "\r\n";
  for (const auto& row : payload["cells"]) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      const std::string col = columns[i].get<std::string>();
      out += csv_quote(row.contains(col) ? cell_to_string(row[col]) : "");
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace

std::string render_result_svg(const ExperimentResult& result) {
  const json& payload = result.payload;
  if (!payload.contains("plot")) return {};
  const json& plot = payload["plot"];
  SvgPlotSpec spec;
  spec.x_label = plot["x"].get<std::string>();
  spec.y_label = plot["y"].get<std::string>();
  spec.log_x = plot["logx"].get<bool>();
  spec.log_y = plot["logy"].get<bool>();
  spec.title = plot["title"].get<std::string>();
  for (const auto& row : payload["cells"]) {
    if (row.contains(spec.x_label) && row[spec.x_label].is_number() &&
        row.contains(spec.y_label) && row[spec.y_label].is_number()) {
      spec.x.push_back(row[spec.x_label].get<double>());
      spec.y.push_back(row[spec.y_label].get<double>());
    }
  }
  return render_svg(spec);
}

std::vector<std::string> emit_outputs(const ExperimentResult& result, const std::string& dir) {
  const json& payload = result.payload;
  const std::string stem = payload["experiment"].get<std::string>() + "-" +
                           payload["config_hash"].get<std::string>();
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;

  const std::filesystem::path jpath = std::filesystem::path(dir) / (stem + ".json");
  atomic_write(jpath, payload.dump(2) + "\n");
  written.push_back(jpath.string());

  const std::filesystem::path cpath = std::filesystem::path(dir) / (stem + ".csv");
  atomic_write(cpath, to_csv(payload));
  written.push_back(cpath.string());

  const std::string svg = render_result_svg(result);
  if (!svg.empty()) {
    const std::filesystem::path spath = std::filesystem::path(dir) / (stem + ".svg");
    atomic_write(spath, svg);
    written.push_back(spath.string());
  }
  return written;
}

}  // namespace pinlab
