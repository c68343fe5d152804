#include "gamepoly/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <stdexcept>

#include "gamepoly/polysolve.hpp"
#include "gamepoly/serialization.hpp"

#ifndef GAMEPOLY_VERSION
#define GAMEPOLY_VERSION "0.0.0"
#endif

namespace gamepoly {
namespace {

using nlohmann::json;

constexpr int kExperimentSchemaVersion = 1;
constexpr std::uint64_t kDefaultSamples = 100000;
constexpr double kNullBandLevel = 0.99;

std::string num(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(12);
  out << v;
  return out.str();
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> out;
    (out.push_back(cell(cells)), ...);
    if (out.size() != width_) throw std::logic_error("CSV row width does not match header");
    line(out);
  }

  std::string str() const { return body_.str(); }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::uint64_t v) { return std::to_string(v); }

  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << '\n';
  }

  std::size_t width_;
  std::ostringstream body_;
};

bool is_command(std::string_view c) {
  return std::find(std::begin(kCommands), std::end(kCommands), c) != std::end(kCommands);
}

std::vector<int> default_d_values(std::string_view command) {
  if (command == "variance-scan") return {50, 100, 200};
  if (command == "clt-check") return {200};
  if (command == "universality") return {20, 50, 100};
  if (command == "symmetric-compare") return {2, 5, 10, 20, 50, 100, 200};
  if (command == "distribution") return {4};
  if (command == "pm-analytic") return {3};
  if (command == "sample-game") return {3};
  return {5};
}

// Large-d commands default to drawing the aggregated coefficients directly;
// the tuple-level schemes would need 2^(d-1) draws per game.
Scheme default_scheme(std::string_view command) {
  if (command == "variance-scan" || command == "clt-check" || command == "universality" ||
      command == "symmetric-compare") {
    return Scheme::scaled_kss;
  }
  return Scheme::aggregate_a;
}

CampaignConfig campaign(const ExperimentConfig& c, int d, Distribution dist, bool symmetric) {
  CampaignConfig cc;
  cc.ensemble = {c.n, d, dist, *c.scheme, symmetric, c.side};
  cc.samples = *c.samples;
  cc.seed = c.seed;
  cc.workers = c.workers;
  if (c.tolerance) cc.bivariate_tolerance = *c.tolerance;
  return cc;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

struct Outcome {
  std::vector<std::string> header;
  std::string csv;
  json results = json::array();
  std::optional<PlotSpec> plot;
};

Outcome expected_count(const ExperimentConfig& c) {
  Csv csv({"n", "d", "dist", "scheme", "symmetric", "side", "samples", "mean_count", "standard_error", "std_dev",
           "reference_mean", "z_score", "degenerate_redraws", "conforming"});
  Outcome out;
  for (int d : c.d_values) {
    const CampaignConfig cc = campaign(c, d, c.dists.front(), c.symmetric);
    const MonteCarloSummary s = run_campaign(cc);
    double reference = c.symmetric ? symmetric_reference(d).lower_bound : expected_count_closed_form(d, c.n);
    if (c.side == RootSide::real) reference *= 2.0;
    const double se = s.samples() > 1 ? s.standard_error() : 0.0;
    const double sd = s.samples() > 1 ? std::sqrt(s.variance()) : 0.0;
    csv.row(c.n, d, to_string(cc.ensemble.dist), to_string(*c.scheme), c.symmetric, to_string(c.side), s.samples(),
            s.mean(), se, sd, reference, se > 0.0 ? (s.mean() - reference) / se : 0.0, s.degenerate(),
            cc.ensemble.conforming());
    out.results.push_back(s);
  }
  out.csv = csv.str();
  out.plot = PlotSpec{PlotKind::line, c.n == 2, "Mean number of internal equilibria", {"mean_count"}};
  return out;
}

Outcome variance_scan(const ExperimentConfig& c) {
  Csv csv({"n", "d", "dist", "scheme", "samples", "mean_count", "variance", "variance_ratio", "relative_change"});
  Outcome out;
  std::optional<double> previous;
  for (int d : c.d_values) {
    const CampaignConfig cc = campaign(c, d, c.dists.front(), c.symmetric);
    const MonteCarloSummary s = run_campaign(cc);
    const double ratio = variance_ratio(s);
    const double change = previous ? std::abs(ratio - *previous) / std::abs(*previous) : 0.0;
    csv.row(c.n, d, to_string(cc.ensemble.dist), to_string(*c.scheme), s.samples(), s.mean(), s.variance(), ratio,
            change);
    previous = ratio;
    out.results.push_back(s);
  }
  out.csv = csv.str();
  return out;
}

Outcome clt_check(const ExperimentConfig& c) {
  Csv csv({"d", "samples", "standardized_mean", "standardized_variance", "skewness", "excess_kurtosis",
           "skewness_lower", "skewness_upper", "kurtosis_lower", "kurtosis_upper", "inside_band"});
  Outcome out;
  for (int d : c.d_values) {
    const CampaignConfig cc = campaign(c, d, c.dists.front(), c.symmetric);
    const MonteCarloSummary s = run_campaign(cc);
    const CltReport r = clt_diagnostics(s);
    const NullBand band = gaussian_null_band(s.samples(), c.null_replicates, kNullBandLevel,
                                             substream_seed(c.seed, static_cast<std::uint64_t>(d), 1));
    const bool inside = r.skewness >= band.skewness_lower && r.skewness <= band.skewness_upper &&
                        r.excess_kurtosis >= band.kurtosis_lower && r.excess_kurtosis <= band.kurtosis_upper;
    csv.row(d, s.samples(), r.mean, r.variance, r.skewness, r.excess_kurtosis, band.skewness_lower,
            band.skewness_upper, band.kurtosis_lower, band.kurtosis_upper, inside);
    out.results.push_back(s);
  }
  out.csv = csv.str();
  return out;
}

Outcome distribution(const ExperimentConfig& c) {
  Csv csv({"m", "p_m_empirical", "standard_error"});
  Outcome out;
  const CampaignConfig cc = campaign(c, c.d_values.front(), c.dists.front(), c.symmetric);
  const MonteCarloSummary s = run_campaign(cc);
  const auto pm = s.pm();
  const auto se = s.pm_standard_error();
  for (std::size_t m = 0; m < pm.size(); ++m) csv.row(static_cast<int>(m), pm[m], se[m]);
  out.results.push_back(s);
  out.csv = csv.str();
  out.plot = PlotSpec{PlotKind::bar, false, "Empirical p_m, d = " + std::to_string(c.d_values.front()), {}};
  return out;
}

Outcome pm_analytic(const ExperimentConfig& c) {
  Csv csv({"m", "p_m_quadrature", "error", "method"});
  Outcome out;
  const PmTable table = pm_distribution(c.d_values.front(), c.quad);
  for (std::size_t m = 0; m < table.values.size(); ++m) {
    csv.row(static_cast<int>(m), table.values[m], table.errors[m], table.method);
  }
  out.results.push_back(table);
  out.csv = csv.str();
  out.plot = PlotSpec{PlotKind::bar, false, "Analytic p_m, d = " + std::to_string(c.d_values.front()), {}};
  return out;
}

Outcome universality(const ExperimentConfig& c) {
  Csv csv({"d", "dist", "scheme", "samples", "mean_count", "standard_error", "mean_over_sqrt_dm1", "reference"});
  Outcome out;
  for (int d : c.d_values) {
    for (Distribution dist : c.dists) {
      const MonteCarloSummary s = run_campaign(campaign(c, d, dist, false));
      const double scale = std::sqrt(d - 1.0);
      csv.row(d, to_string(dist), to_string(*c.scheme), s.samples(), s.mean(), s.standard_error(), s.mean() / scale,
              0.5);
      out.results.push_back(s);
    }
  }
  out.csv = csv.str();
  out.plot = PlotSpec{PlotKind::line, true, "Mean count by distribution", {"mean_count"}};
  return out;
}

Outcome symmetric_compare(const ExperimentConfig& c) {
  Csv csv({"d", "dist", "samples", "mean_symmetric", "se_symmetric", "mean_asymmetric", "se_asymmetric",
           "lower_bound", "asymptotic", "ratio_to_asymptotic"});
  Outcome out;
  for (int d : c.d_values) {
    const MonteCarloSummary sym = run_campaign(campaign(c, d, c.dists.front(), true));
    const MonteCarloSummary asym = run_campaign(campaign(c, d, c.dists.front(), false));
    const SymmetricReference ref = symmetric_reference(d);
    csv.row(d, to_string(c.dists.front()), sym.samples(), sym.mean(), sym.standard_error(), asym.mean(),
            asym.standard_error(), ref.lower_bound, ref.asymptotic, sym.mean() / ref.asymptotic);
    out.results.push_back(sym);
    out.results.push_back(asym);
  }
  out.csv = csv.str();
  out.plot = PlotSpec{PlotKind::line, true, "Symmetric versus asymmetric games", {"mean_symmetric", "mean_asymmetric"}};
  return out;
}

Outcome sample_game_dump(const ExperimentConfig& c) {
  Csv csv({"index", "n", "d", "count", "degenerate"});
  Outcome out;
  const int d = c.d_values.front();
  for (std::uint64_t i = 0; i < *c.samples; ++i) {
    SeededStream stream(c.seed, i);
    const CoefficientSystem system = sample_game(c.n, d, c.dists.front(), *c.scheme, stream);
    RootCountReport report;
    if (c.n == 2) {
      report = isolate_refine(to_univariate(system), 1e-12);
      for (double y : report.roots) report.points.push_back(to_simplex(std::vector<double>{y}));
    } else if (d == 2) {
      report = solve_linear(system);
    } else {
      report = count_positive_bivariate(BivariateSystem::from_system(system), c.tolerance.value_or(1e-8));
    }
    csv.row(i, c.n, d, report.count, report.degenerate);
    out.results.push_back(json{{"index", i}, {"system", system}, {"report", report}});
  }
  out.csv = csv.str();
  return out;
}

std::string csv_preamble(const ExperimentConfig& c) {
  return "# gamepoly " + std::string(artifact_version()) + "\n# config " + config_echo(c).dump() + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string_view artifact_version() { return GAMEPOLY_VERSION; }

ExperimentConfig resolve(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  require(is_command(c.command), "unknown command '" + c.command + "'");
  if (c.d_values.empty()) c.d_values = default_d_values(c.command);
  if (c.dists.empty()) {
    if (c.command == "universality") {
      c.dists = {Distribution::gaussian, Distribution::rademacher, Distribution::uniform};
    } else {
      c.dists = {Distribution::gaussian};
    }
  }
  if (!c.scheme) c.scheme = default_scheme(c.command);
  if (!c.samples) c.samples = c.command == "sample-game" ? 1 : kDefaultSamples;
  if (c.tolerance && c.command == "pm-analytic") c.quad.tolerance = *c.tolerance;

  require(*c.samples >= 1, "--samples must be at least 1");
  require(c.workers >= 1, "--workers must be at least 1");
  for (int d : c.d_values) validate_shape(c.n, d);
  const bool single_d = c.command == "distribution" || c.command == "pm-analytic" || c.command == "sample-game";
  require(!single_d || c.d_values.size() == 1, c.command + " takes a single d");
  const bool two_strategy = c.command == "clt-check" || c.command == "pm-analytic" ||
                            c.command == "universality" || c.command == "symmetric-compare";
  require(!two_strategy || c.n == 2, c.command + " is defined for n = 2");
  require(c.symmetric == false || c.n == 2, "--symmetric needs n = 2");

  if (c.command == "pm-analytic") {
    require(c.d_values.front() <= 5, "pm-analytic supports d <= 5");
    validate(c.quad);
    return c;
  }
  if (c.command == "clt-check") require(*c.samples >= 1000, "clt-check needs at least 1000 samples");
  if (c.command == "variance-scan") require(*c.samples >= 2, "variance-scan needs at least 2 samples");
  if (c.command == "sample-game") {
    require(c.side == RootSide::positive, "sample-game reports positive roots");
  }
  // Every campaign the command will run must be solvable before any work.
  for (int d : c.d_values) {
    for (Distribution dist : c.dists) {
      const bool with_symmetric = c.command == "symmetric-compare";
      validate_campaign(campaign(c, d, dist, with_symmetric || c.symmetric));
      if (c.command != "sample-game" && *c.scheme != Scheme::scaled_kss && !c.symmetric) {
        require(tuple_count(c.n, d) <= kMaxTupleDraws,
                std::string("scheme ") + std::string(to_string(*c.scheme)) + " at d=" + std::to_string(d) +
                    " exceeds the per-game draw cap; use --scheme scaledKSS");
      }
    }
  }
  return c;
}

json config_echo(const ExperimentConfig& c) {
  json dists = json::array();
  for (Distribution d : c.dists) dists.push_back(std::string(to_string(d)));
  json echo{{"command", c.command},
            {"n", c.n},
            {"d", c.d_values},
            {"dist", dists},
            {"scheme", c.scheme ? std::string(to_string(*c.scheme)) : ""},
            {"symmetric", c.symmetric},
            {"side", std::string(to_string(c.side))},
            {"samples", c.samples.value_or(0)},
            {"seed", c.seed}};
  if (c.tolerance) echo["tolerance"] = *c.tolerance;
  if (c.command == "pm-analytic") echo["quad_config"] = c.quad;
  if (c.command == "clt-check") echo["null_replicates"] = c.null_replicates;
  return echo;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const ExperimentConfig c = resolve(config);
  const auto started = std::chrono::steady_clock::now();

  Outcome outcome;
  if (c.command == "expected-count") outcome = expected_count(c);
  else if (c.command == "variance-scan") outcome = variance_scan(c);
  else if (c.command == "clt-check") outcome = clt_check(c);
  else if (c.command == "distribution") outcome = distribution(c);
  else if (c.command == "pm-analytic") outcome = pm_analytic(c);
  else if (c.command == "universality") outcome = universality(c);
  else if (c.command == "symmetric-compare") outcome = symmetric_compare(c);
  else outcome = sample_game_dump(c);

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::filesystem::create_directories(c.out_dir);
  ExperimentOutput out;
  out.csv = c.out_dir / (c.command + ".csv");
  out.json = c.out_dir / (c.command + ".json");
  write_file(out.csv, csv_preamble(c) + outcome.csv);

  const json sidecar{{"schema_version", kExperimentSchemaVersion},
                     {"version", std::string(artifact_version())},
                     {"command", c.command},
                     {"config", config_echo(c)},
                     {"workers", c.workers},
                     {"csv", out.csv.filename().string()},
                     {"wall_clock_seconds", seconds},
                     {"results", outcome.results}};
  write_file(out.json, sidecar.dump(2) + "\n");

  if (c.plot) {
    if (!outcome.plot) throw std::invalid_argument(c.command + " has no chart");
    out.svg = c.out_dir / (c.command + ".svg");
    emit_plot(out.csv, *outcome.plot, *out.svg);
  }
  return out;
}

}  // namespace gamepoly
