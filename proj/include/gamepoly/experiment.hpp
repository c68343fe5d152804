#pragma once

// Experiment runner behind the command-line tool: turns a config into a CSV
// table, a JSON provenance sidecar, and optionally an SVG chart.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gamepoly/quadrature.hpp"
#include "gamepoly/sampling.hpp"
#include "gamepoly/statistics.hpp"

namespace gamepoly {

// Version stamped into every output file.
std::string_view artifact_version();

inline constexpr const char* kCommands[] = {"expected-count", "variance-scan",     "clt-check",  "distribution",
                                            "pm-analytic",    "universality",      "symmetric-compare",
                                            "sample-game"};

struct ExperimentConfig {
  std::string command;
  int n = 2;
  // Empty means the command's default list.
  std::vector<int> d_values;
  // Empty means the command's default (gaussian; all three for universality).
  std::vector<Distribution> dists;
  std::optional<Scheme> scheme;
  bool symmetric = false;
  RootSide side = RootSide::positive;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  // Matching tolerance for bivariate campaigns, error target for pm-analytic.
  std::optional<double> tolerance;
  QuadConfig quad;
  // Replicates for the simulated CLT null band.
  int null_replicates = 1000;
  bool plot = false;
  std::filesystem::path out_dir = "results";
};

// Resolves per-command defaults (d list, dists, scheme, samples) and checks
// every campaign against the solvable regime. Throws std::invalid_argument.
ExperimentConfig resolve(const ExperimentConfig& config);

// Provenance echo of a resolved config. The worker count and output
// directory are left out: they never change results.
nlohmann::json config_echo(const ExperimentConfig& config);

struct ExperimentOutput {
  std::filesystem::path csv;
  std::filesystem::path json;
  std::optional<std::filesystem::path> svg;
};

// Writes <out>/<command>.csv and <out>/<command>.json (and .svg on request).
ExperimentOutput run_experiment(const ExperimentConfig& config);

enum class PlotKind { bar, line };

struct PlotSpec {
  PlotKind kind = PlotKind::bar;
  // Line charts: draw sqrt(d-1)/2 and sqrt((d-1)/2) as dashed references.
  bool overlay_references = false;
  std::string title;
  // Line charts: y columns to draw; empty picks the known mean columns.
  std::vector<std::string> y_columns;
};

// Parsed CSV: '#' comment lines skipped, first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

// Bar: one bar per row of column m with height p_m_empirical or
// p_m_quadrature in [0, 1]. Line: x = d, one series per y column (and per
// dist when that column exists). Throws SchemaError.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);
void emit_plot(const std::filesystem::path& csv_path, const PlotSpec& spec, const std::filesystem::path& svg_path);

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gamepoly
