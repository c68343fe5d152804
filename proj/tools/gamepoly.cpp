// Command-line experiment runner.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gamepoly/errors.hpp"
#include "gamepoly/experiment.hpp"
#include "gamepoly/serialization.hpp"

namespace {

// "5", "2,3,5" or "lo:hi[:step]".
std::vector<int> parse_d_range(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ':')) parts.push_back(std::stoi(piece));
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("--d-range expects lo:hi[:step]");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step < 1 || parts[1] < parts[0]) throw std::invalid_argument("--d-range needs lo <= hi and step >= 1");
    for (int d = parts[0]; d <= parts[1]; d += step) out.push_back(d);
    return out;
  }
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) out.push_back(std::stoi(piece));
  return out;
}

std::vector<gamepoly::Distribution> parse_dists(const std::string& text) {
  std::vector<gamepoly::Distribution> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) out.push_back(gamepoly::parse_distribution(piece));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium counts of random multi-player evolutionary games"};
  app.set_version_flag("--version", std::string(gamepoly::artifact_version()));

  std::string command;
  int n = 2;
  std::optional<int> d;
  std::string d_range;
  std::string dist;
  std::string scheme;
  bool symmetric = false;
  std::string side = "positive";
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out_dir;
  std::optional<double> tolerance;
  std::string quad_config;
  int replicates = 1000;
  bool plot = false;
  std::string csv_path;
  std::string plot_kind = "bar";
  bool overlay = false;
  std::string svg_path;
  std::string title;

  std::vector<std::string> commands(std::begin(gamepoly::kCommands), std::end(gamepoly::kCommands));
  commands.emplace_back("plot");
  app.add_option("--command", command, "Experiment to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--n", n, "Number of strategies");
  app.add_option("--d", d, "Group size");
  app.add_option("--d-range", d_range, "Group sizes: list a,b,c or range lo:hi[:step]")->excludes("--d");
  app.add_option("--dist", dist, "gaussian, rademacher, uniform (comma list allowed)");
  app.add_option("--scheme", scheme, "aggregateA, payoffB or scaledKSS");
  app.add_flag("--symmetric", symmetric, "Sample the symmetric-game polynomial");
  app.add_option("--side", side, "Roots counted for n = 2: positive, negative or real");
  app.add_option("--samples", samples, "Monte Carlo sample count (default 100000)");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--workers", workers, "Worker threads; never changes results");
  app.add_option("--out", out_dir, "Output directory (default $GAMEPOLY_OUT_DIR or ./results)");
  app.add_option("--tolerance", tolerance, "Bivariate matching tolerance or quadrature error target");
  app.add_option("--quad-config", quad_config, "JSON file with tolerance, max_refinements, method, mc_samples");
  app.add_option("--null-replicates", replicates, "Replicates for the CLT null band");
  app.add_flag("--plot", plot, "Also write an SVG chart");
  app.add_option("--csv", csv_path, "plot: input CSV");
  app.add_option("--plot-kind", plot_kind, "plot: bar or line")->check(CLI::IsMember({"bar", "line"}));
  app.add_flag("--overlay", overlay, "plot: draw the sqrt(d-1)/2 and sqrt((d-1)/2) references");
  app.add_option("--svg", svg_path, "plot: output SVG path");
  app.add_option("--title", title, "plot: chart title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (command == "plot") {
      if (csv_path.empty() || svg_path.empty()) throw std::invalid_argument("plot needs --csv and --svg");
      gamepoly::PlotSpec spec;
      spec.kind = plot_kind == "bar" ? gamepoly::PlotKind::bar : gamepoly::PlotKind::line;
      spec.overlay_references = overlay;
      spec.title = title;
      gamepoly::emit_plot(csv_path, spec, svg_path);
      std::cout << svg_path << '\n';
      return 0;
    }

    gamepoly::ExperimentConfig config;
    config.command = command;
    config.n = n;
    if (d) config.d_values = {*d};
    if (!d_range.empty()) config.d_values = parse_d_range(d_range);
    if (!dist.empty()) config.dists = parse_dists(dist);
    if (!scheme.empty()) config.scheme = gamepoly::parse_scheme(scheme);
    config.symmetric = symmetric;
    config.side = gamepoly::parse_root_side(side);
    config.samples = samples;
    config.seed = seed;
    config.workers = workers;
    config.tolerance = tolerance;
    config.null_replicates = replicates;
    config.plot = plot;
    if (!quad_config.empty()) {
      std::ifstream in(quad_config);
      if (!in) throw std::invalid_argument("cannot read " + quad_config);
      config.quad = nlohmann::json::parse(in).get<gamepoly::QuadConfig>();
    }
    if (!out_dir.empty()) {
      config.out_dir = out_dir;
    } else if (const char* env = std::getenv("GAMEPOLY_OUT_DIR"); env && *env) {
      config.out_dir = env;
    }

    const gamepoly::ExperimentOutput out = gamepoly::run_experiment(config);
    std::cout << out.csv.string() << '\n' << out.json.string() << '\n';
    if (out.svg) std::cout << out.svg->string() << '\n';
    return 0;
  } catch (const gamepoly::DegenerateRateError& e) {
    std::cerr << "gamepoly: degenerate-rate breach: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gamepoly: " << e.what() << '\n';
    return 2;
  }
}
