#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <map>
#include <sstream>

#include "gamepoly/experiment.hpp"

namespace gamepoly {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string f(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(6);
  out << v;
  return out.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

double parse_number(const std::string& cell, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("column '" + column + "' holds non-numeric value '" + cell + "'");
  }
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void open_svg(std::ostringstream& svg, const std::string& title) {
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(kWidth) << "\" height=\"" << f(kHeight)
      << "\" viewBox=\"0 0 " << f(kWidth) << ' ' << f(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << f(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << escape(title) << "</text>\n";
}

void axes(std::ostringstream& svg, const std::string& xlabel, const std::string& ylabel, double ymin, double ymax) {
  const double x0 = kLeft, y0 = kHeight - kBottom, x1 = kWidth - kRight, y1 = kTop;
  svg << "<line x1=\"" << f(x0) << "\" y1=\"" << f(y0) << "\" x2=\"" << f(x1) << "\" y2=\"" << f(y0)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << f(x0) << "\" y1=\"" << f(y0) << "\" x2=\"" << f(x0) << "\" y2=\"" << f(y1)
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = ymin + (ymax - ymin) * i / 4.0;
    const double y = y0 - (y0 - y1) * i / 4.0;
    svg << "<text x=\"" << f(x0 - 6) << "\" y=\"" << f(y + 4) << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << f(v) << "</text>\n";
  }
  svg << "<text x=\"" << f((x0 + x1) / 2) << "\" y=\"" << f(kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(xlabel) << "</text>\n"
      << "<text x=\"16\" y=\"" << f((y0 + y1) / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 16 " << f((y0 + y1) / 2) << ")\">" << escape(ylabel) << "</text>\n";
}

std::string bar_chart(const CsvTable& table, const PlotSpec& spec) {
  const int mcol = table.column("m");
  int pcol = table.column("p_m_empirical");
  if (pcol < 0) pcol = table.column("p_m_quadrature");
  if (mcol < 0 || pcol < 0) throw SchemaError("bar chart needs columns m and p_m_empirical or p_m_quadrature");
  std::vector<std::pair<double, double>> bars;
  for (const auto& row : table.rows) {
    const double p = parse_number(row[pcol], table.header[pcol]);
    if (p < -1e-6 || p > 1.0 + 1e-6) throw SchemaError("p_m value " + row[pcol] + " outside [0, 1]");
    bars.emplace_back(parse_number(row[mcol], "m"), std::clamp(p, 0.0, 1.0));
  }
  std::ostringstream svg;
  open_svg(svg, spec.title.empty() ? "p_m" : spec.title);
  axes(svg, "number of internal equilibria m", "probability", 0.0, 1.0);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double slot = plot_w / bars.size();
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = bars[i].second * plot_h;
    const double x = kLeft + slot * i + 0.15 * slot;
    svg << "<rect class=\"bar\" x=\"" << f(x) << "\" y=\"" << f(kHeight - kBottom - h) << "\" width=\""
        << f(0.7 * slot) << "\" height=\"" << f(h) << "\" fill=\"" << kPalette[0] << "\"/>\n"
        << "<text x=\"" << f(x + 0.35 * slot) << "\" y=\"" << f(kHeight - kBottom + 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << f(bars[i].first) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string line_chart(const CsvTable& table, const PlotSpec& spec) {
  const int dcol = table.column("d");
  if (dcol < 0) throw SchemaError("line chart needs a d column");
  std::vector<std::string> ycols = spec.y_columns;
  if (ycols.empty()) {
    for (const char* name : {"mean_count", "mean_symmetric", "mean_asymmetric"}) {
      if (table.column(name) >= 0) ycols.emplace_back(name);
    }
  }
  if (ycols.empty()) throw SchemaError("line chart found no mean column");
  const int group_col = table.column("dist");

  // Series keyed by "column" or "column (dist)", points in row order.
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double xmin = INFINITY, xmax = -INFINITY, ymin = 0.0, ymax = -INFINITY;
  for (const std::string& y : ycols) {
    const int ycol = table.column(y);
    if (ycol < 0) throw SchemaError("line chart column '" + y + "' is missing");
    for (const auto& row : table.rows) {
      const double x = parse_number(row[dcol], "d");
      const double v = parse_number(row[ycol], y);
      const std::string key = group_col >= 0 && ycols.size() == 1 ? y + " (" + row[group_col] + ")" : y;
      series[key].emplace_back(x, v);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, v);
    }
  }
  if (spec.overlay_references) {
    if (xmin < 2.0) throw SchemaError("reference curves need d >= 2");
    ymax = std::max(ymax, std::sqrt((xmax - 1.0) / 2.0));
  }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax <= ymin) ymax = ymin + 1.0;
  ymax *= 1.05;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kHeight - kBottom - (y - ymin) / (ymax - ymin) * plot_h; };

  std::ostringstream svg;
  open_svg(svg, spec.title.empty() ? "mean count" : spec.title);
  axes(svg, "group size d", "mean number of internal equilibria", ymin, ymax);
  for (int i = 0; i <= 4; ++i) {
    const double v = xmin + (xmax - xmin) * i / 4.0;
    svg << "<text x=\"" << f(px(v)) << "\" y=\"" << f(kHeight - kBottom + 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << f(v) << "</text>\n";
  }

  if (spec.overlay_references) {
    const struct {
      const char* name;
      double scale;
    } refs[] = {{"sqrt(d-1)/2", 0.5}, {"sqrt((d-1)/2)", std::sqrt(0.5)}};
    for (const auto& ref : refs) {
      svg << "<polyline class=\"reference\" data-name=\"" << ref.name
          << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"5,4\" points=\"";
      for (int i = 0; i <= 100; ++i) {
        const double x = xmin + (xmax - xmin) * i / 100.0;
        svg << (i ? " " : "") << f(px(x)) << ',' << f(py(ref.scale * std::sqrt(x - 1.0)));
      }
      svg << "\"/>\n";
    }
  }

  int colour = 0;
  double legend_y = kTop + 10;
  for (const auto& [name, points] : series) {
    const char* stroke = kPalette[colour++ % std::size(kPalette)];
    svg << "<polyline class=\"series\" data-name=\"" << escape(name) << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      svg << (i ? " " : "") << f(px(points[i].first)) << ',' << f(py(points[i].second));
    }
    svg << "\"/>\n";
    for (const auto& [x, y] : points) {
      svg << "<circle cx=\"" << f(px(x)) << "\" cy=\"" << f(py(y)) << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    }
    svg << "<text x=\"" << f(kLeft + 10) << "\" y=\"" << f(legend_y) << "\" font-family=\"sans-serif\" "
        << "font-size=\"11\" fill=\"" << stroke << "\">" << escape(name) << "</text>\n";
    legend_y += 14;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

int CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size()) throw SchemaError("CSV row width does not match header");
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  if (table.header.empty() || table.rows.empty()) throw SchemaError("CSV has no header or no data rows");
  return spec.kind == PlotKind::bar ? bar_chart(table, spec) : line_chart(table, spec);
}

void emit_plot(const std::filesystem::path& csv_path, const PlotSpec& spec, const std::filesystem::path& svg_path) {
  const std::string svg = render_svg(read_csv(csv_path), spec);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + svg_path.string());
  out << svg;
}

}  // namespace gamepoly
