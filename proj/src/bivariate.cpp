#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gamepoly/errors.hpp"
#include "gamepoly/polysolve.hpp"

namespace gamepoly {
namespace {

constexpr int kMaxSylvesterSize = 8;
// Resultant roots are refined well past the matching tolerance so the
// back-substituted y2 roots of both equations line up.
constexpr double kResultantTolerance = 1e-14;
constexpr double kBackSubstituteTolerance = 1e-13;
// Distances above the matching tolerance but below this are near-tangencies.
constexpr double kNearMissBand = 1e-4;
// A univariate slice whose coefficients fall below this fraction of the
// evaluation magnitude is treated as identically zero.
constexpr double kVanishingSlice = 1e-9;

using PolyMatrix = std::vector<std::vector<UnivariatePoly>>;

UnivariatePoly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  UnivariatePoly total;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    PolyMatrix minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) minor[r - 1].push_back(m[r][c]);
      }
    }
    const UnivariatePoly term = m[0][col] * determinant(minor);
    total = col % 2 == 0 ? total + term : total - term;
  }
  return total;
}

// Coefficients of p in powers of the eliminated variable, trimmed to the
// highest power with a nonzero coefficient.
std::vector<UnivariatePoly> slices(const BivariatePoly& p, Variable eliminated) {
  std::vector<UnivariatePoly> out;
  for (int j = 0; j <= p.degree(); ++j) {
    out.push_back(eliminated == Variable::y2 ? p.along_y1(j) : p.along_y2(j));
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

// Sum of |c(i, j)| y1^i over all terms: the scale of f(y1, .) at y1.
double slice_magnitude(const BivariatePoly& p, double y1) {
  double mag = 0.0;
  for (int i = 0; i <= p.degree(); ++i) {
    for (int j = 0; i + j <= p.degree(); ++j) mag += std::abs(p.coefficient(i, j)) * std::pow(y1, i);
  }
  return mag;
}

bool vanishes(const UnivariatePoly& slice, double magnitude) {
  return slice.max_abs_coefficient() <= kVanishingSlice * magnitude;
}

// Leading y2 coefficient A(y1) lost against its own term magnitudes.
bool top_vanishes(const UnivariatePoly& top, double y1) {
  double mag = 0.0;
  for (std::size_t i = 0; i < top.size(); ++i) mag += std::abs(top[i]) * std::pow(y1, static_cast<double>(i));
  return std::abs(top.evaluate(y1)) <= kVanishingSlice * mag;
}

}  // namespace

BivariatePoly::BivariatePoly(int degree) : BivariatePoly(degree, std::vector<double>((degree + 1) * (degree + 1), 0.0)) {}

BivariatePoly::BivariatePoly(int degree, std::vector<double> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw std::invalid_argument("bivariate degree must be nonnegative");
  if (coeffs_.size() != static_cast<std::size_t>((degree + 1) * (degree + 1))) {
    throw std::invalid_argument("bivariate coefficient table must hold (degree+1)^2 values");
  }
  for (int i = 0; i <= degree; ++i) {
    for (int j = 0; j <= degree; ++j) {
      const double c = coeffs_[i * (degree + 1) + j];
      if (!std::isfinite(c)) throw std::invalid_argument("bivariate coefficients must be finite");
      if (i + j > degree && c != 0.0) throw std::invalid_argument("bivariate term exceeds total degree");
    }
  }
}

double BivariatePoly::coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_ || j > degree_) return 0.0;
  return coeffs_[i * (degree_ + 1) + j];
}

void BivariatePoly::set(int i, int j, double value) {
  if (i < 0 || j < 0 || i + j > degree_) throw std::out_of_range("bivariate term exceeds total degree");
  if (!std::isfinite(value)) throw std::invalid_argument("bivariate coefficients must be finite");
  coeffs_[i * (degree_ + 1) + j] = value;
}

double BivariatePoly::evaluate(double y1, double y2) const {
  double outer = 0.0;
  for (int i = degree_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = degree_ - i; j >= 0; --j) inner = inner * y2 + coefficient(i, j);
    outer = outer * y1 + inner;
  }
  return outer;
}

double BivariatePoly::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

UnivariatePoly BivariatePoly::along_y1(int power_of_y2) const {
  std::vector<double> c(degree_ + 1, 0.0);
  for (int i = 0; i <= degree_; ++i) c[i] = coefficient(i, power_of_y2);
  return UnivariatePoly(std::move(c));
}

UnivariatePoly BivariatePoly::along_y2(int power_of_y1) const {
  std::vector<double> c(degree_ + 1, 0.0);
  for (int j = 0; j <= degree_; ++j) c[j] = coefficient(power_of_y1, j);
  return UnivariatePoly(std::move(c));
}

UnivariatePoly BivariatePoly::at_y1(double y1) const {
  std::vector<double> c(degree_ + 1, 0.0);
  for (int j = 0; j <= degree_; ++j) c[j] = along_y1(j).evaluate(y1);
  return UnivariatePoly(std::move(c));
}

UnivariatePoly BivariatePoly::at_y2(double y2) const {
  std::vector<double> c(degree_ + 1, 0.0);
  for (int i = 0; i <= degree_; ++i) c[i] = along_y2(i).evaluate(y2);
  return UnivariatePoly(std::move(c));
}

BivariatePoly BivariatePoly::swapped() const {
  BivariatePoly out(degree_);
  for (int i = 0; i <= degree_; ++i) {
    for (int j = 0; i + j <= degree_; ++j) out.set(j, i, coefficient(i, j));
  }
  return out;
}

BivariateSystem BivariateSystem::from_system(const CoefficientSystem& system) {
  if (system.strategies() != 3) throw std::invalid_argument("bivariate systems need n = 3");
  const int degree = system.group_size() - 1;
  BivariatePoly first(degree);
  BivariatePoly second(degree);
  const ExponentLayout& layout = system.layout();
  for (std::size_t r = 0; r < layout.size(); ++r) {
    const auto k = layout.index(r);
    first.set(k[0], k[1], system.equation(0)[r]);
    second.set(k[0], k[1], system.equation(1)[r]);
  }
  return {std::move(first), std::move(second)};
}

UnivariatePoly resultant_eliminate(const BivariateSystem& system, Variable eliminated) {
  const std::vector<UnivariatePoly> f = slices(system.first, eliminated);
  const std::vector<UnivariatePoly> g = slices(system.second, eliminated);
  if (f.back().is_zero() || g.back().is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  const int df = static_cast<int>(f.size()) - 1;
  const int dg = static_cast<int>(g.size()) - 1;
  if (df == 0 && dg == 0) {
    throw std::invalid_argument("neither polynomial depends on the eliminated variable");
  }
  const int size = df + dg;
  if (size > kMaxSylvesterSize) throw std::invalid_argument("Sylvester matrix too large for cofactor expansion");

  // Rows hold coefficients from the highest power down, shifted one column
  // per row: dg rows of f followed by df rows of g.
  PolyMatrix sylvester(size, std::vector<UnivariatePoly>(size));
  for (int row = 0; row < dg; ++row) {
    for (int p = 0; p <= df; ++p) sylvester[row][row + df - p] = f[p];
  }
  for (int row = 0; row < df; ++row) {
    for (int p = 0; p <= dg; ++p) sylvester[dg + row][row + dg - p] = g[p];
  }
  return determinant(sylvester).trimmed();
}

RootCountReport count_positive_bivariate(const BivariateSystem& system, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("matching tolerance must be positive");
  if (system.first.degree() > 2 || system.second.degree() > 2) {
    throw std::invalid_argument("bivariate counting supports total degree <= 2 (d in {2, 3})");
  }
  RootCountReport report;
  const UnivariatePoly resultant = resultant_eliminate(system, Variable::y2);
  if (resultant.is_zero() || resultant.max_abs_coefficient() == 0.0) {
    report.degenerate = true;  // common factor: a curve of solutions
    return report;
  }

  RootCountReport projections;
  try {
    projections = isolate_refine(resultant, kResultantTolerance);
  } catch (const ConvergenceError&) {
    report.degenerate = true;
    return report;
  }
  if (projections.degenerate) report.degenerate = true;

  const auto f_lead = slices(system.first, Variable::y2);
  const auto g_lead = slices(system.second, Variable::y2);

  for (double y1 : projections.roots) {
    const UnivariatePoly f = system.first.at_y1(y1);
    const UnivariatePoly g = system.second.at_y1(y1);
    const double f_mag = slice_magnitude(system.first, y1);
    const double g_mag = slice_magnitude(system.second, y1);
    const bool f_vanishes = vanishes(f, f_mag);
    const bool g_vanishes = vanishes(g, g_mag);
    if (f_vanishes && g_vanishes) {
      report.degenerate = true;
      continue;
    }
    // A leading coefficient in y2 that vanishes at this y1 sends a root to
    // infinity and leaves a spurious resultant root behind.
    if ((!f_vanishes && f_lead.size() > 1 && top_vanishes(f_lead.back(), y1)) ||
        (!g_vanishes && g_lead.size() > 1 && top_vanishes(g_lead.back(), y1))) {
      report.degenerate = true;
      continue;
    }

    std::vector<double> f_roots;
    std::vector<double> g_roots;
    try {
      if (!f_vanishes) f_roots = isolate_refine(f, kBackSubstituteTolerance).roots;
      if (!g_vanishes) g_roots = isolate_refine(g, kBackSubstituteTolerance).roots;
    } catch (const std::runtime_error&) {
      report.degenerate = true;
      continue;
    }
    if (f_vanishes) f_roots = g_roots;
    if (g_vanishes) g_roots = f_roots;

    int matches = 0;
    for (double a : f_roots) {
      for (double b : g_roots) {
        const double distance = std::abs(a - b);
        const double scale = std::max(std::abs(a), std::abs(b));
        if (distance <= tol * scale) {
          ++matches;
          report.points.push_back({y1, 0.5 * (a + b)});
        } else if (distance <= kNearMissBand * scale) {
          report.degenerate = true;
        }
      }
    }
    if (matches > 1) report.degenerate = true;
  }
  report.count = static_cast<int>(report.points.size());
  return report;
}

}  // namespace gamepoly
