#include "gamepoly/polysolve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gamepoly/errors.hpp"

namespace gamepoly {
namespace {

constexpr int kMaxRefineIterations = 400;
constexpr double kLinearConditionFloor = 1e-12;

// Sign of p(y) for y >= 0, evaluated in the reversed basis past y = 1 so
// large arguments do not overflow. Zero means the value is lost in rounding.
int stable_sign(const UnivariatePoly& p, const UnivariatePoly& reversed, double y) {
  if (std::isinf(y)) return (p.leading() > 0.0) - (p.leading() < 0.0);
  const UnivariatePoly& poly = y <= 1.0 ? p : reversed;
  const double x = y <= 1.0 ? y : 1.0 / y;
  double value = 0.0;
  double mag = 0.0;
  const auto c = poly.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    value = value * x + *it;
    mag = mag * x + std::abs(*it);
  }
  if (std::abs(value) <= 4.0 * c.size() * std::numeric_limits<double>::epsilon() * mag) return 0;
  return (value > 0.0) - (value < 0.0);
}

// Exact division by gcd(p, p') when the Sturm chain terminates early on an
// exactly zero remainder.
UnivariatePoly squarefree_part(const UnivariatePoly& p) {
  if (p.degree() > kSturmMaxDegree || p.degree() < 2) return p;
  const SturmChain chain(p);
  if (chain.squarefree() || chain.ambiguous()) return p;
  const UnivariatePoly& g = chain.members().back();
  std::vector<double> r(p.coefficients().begin(), p.coefficients().end());
  const int dg = g.degree();
  std::vector<double> quotient(p.degree() - dg + 1, 0.0);
  for (int i = p.degree(); i >= dg; --i) {
    const double q = r[i] / g[dg];
    quotient[i - dg] = q;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] -= q * g[j];
  }
  return UnivariatePoly(std::move(quotient));
}

// Shrinks a bracket [lower, upper] whose endpoint signs differ until its
// width is below tol * max(1, |root|). Bisection with Newton steps taken when
// they land inside the bracket.
Interval refine_bracket(const UnivariatePoly& p, Interval bracket, double tol, double& root) {
  const UnivariatePoly reversed = p.reversed();
  const UnivariatePoly dp = p.derivative();
  int lower_sign = stable_sign(p, reversed, bracket.lower);
  if (lower_sign == 0) lower_sign = -stable_sign(p, reversed, bracket.upper);

  // Pull an infinite upper end in by doubling.
  if (std::isinf(bracket.upper)) {
    double probe = std::max(2.0, 2.0 * bracket.lower);
    for (int i = 0; i < 2100; ++i) {
      const int s = stable_sign(p, reversed, probe);
      if (s != 0 && s != lower_sign) break;
      bracket.lower = probe;
      probe *= 2.0;
      if (std::isinf(probe)) throw ConvergenceError("root bracket does not close", bracket.lower, bracket.upper);
    }
    bracket.upper = probe;
  }

  double guess = 0.5 * (bracket.lower + bracket.upper);
  for (int iter = 0; iter < kMaxRefineIterations; ++iter) {
    const double scale = std::max(1.0, std::abs(guess));
    if (bracket.width() < tol * scale) {
      root = 0.5 * (bracket.lower + bracket.upper);
      return bracket;
    }
    // Newton from the current guess; fall back to the midpoint.
    double candidate = 0.5 * (bracket.lower + bracket.upper);
    bool newton = false;
    if (guess <= 1.0) {
      const double fv = p.evaluate(guess);
      const double dv = dp.evaluate(guess);
      if (dv != 0.0) {
        const double step = guess - fv / dv;
        if (step > bracket.lower && step < bracket.upper) {
          candidate = step;
          newton = true;
        }
      }
    }
    const int s = stable_sign(p, reversed, candidate);
    if (s == 0) {
      // Value lost in rounding: the root is at candidate to working precision.
      root = candidate;
      const double half = 0.25 * tol * std::max(1.0, std::abs(candidate));
      return {std::max(bracket.lower, candidate - half), std::min(bracket.upper, candidate + half)};
    }
    if (s == lower_sign) {
      bracket.lower = candidate;
    } else {
      bracket.upper = candidate;
    }
    // A Newton step converges from one side; probe just past it to close the
    // bracket from the other.
    if (newton) {
      const double nudge = 0.25 * tol * std::max(1.0, std::abs(candidate));
      const double probe = s == lower_sign ? candidate + nudge : candidate - nudge;
      if (probe > bracket.lower && probe < bracket.upper) {
        const int ps = stable_sign(p, reversed, probe);
        if (ps != 0 && ps != s) {
          if (s == lower_sign) {
            bracket.upper = probe;
          } else {
            bracket.lower = probe;
          }
        }
      }
    }
    guess = candidate;
  }
  throw ConvergenceError("root refinement did not converge", bracket.lower, bracket.upper);
}

}  // namespace

RootCountReport count_positive(const UnivariatePoly& p) {
  const UnivariatePoly q = p.trimmed();
  if (q.is_zero()) throw DegenerateError("root count of the zero polynomial");
  if (q.degree() <= kSturmMaxDegree) {
    RootCountReport report = sturm_count_positive(q);
    if (!report.degenerate) return report;
  }
  return subdivision_count_positive(q);
}

RootCountReport isolate_refine(const UnivariatePoly& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("refinement tolerance must be positive");
  const UnivariatePoly q = squarefree_part(p.trimmed());
  RootCountReport report = subdivision_count_positive(q);
  for (Interval& bracket : report.intervals) {
    double root = 0.0;
    bracket = refine_bracket(q, bracket, tol, root);
    report.roots.push_back(root);
  }
  return report;
}

RootCountReport solve_linear(const CoefficientSystem& system) {
  if (system.group_size() != 2) throw std::invalid_argument("linear solve requires d = 2");
  const int m = system.equations();
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  std::vector<int> unit(m, 0);
  for (int i = 0; i < m; ++i) {
    const auto eq = system.equation(i);
    rhs(i) = -eq[0];  // rank 0 is the all-zero exponent
    for (int j = 0; j < m; ++j) {
      std::fill(unit.begin(), unit.end(), 0);
      unit[j] = 1;
      a(i, j) = eq[system.layout().rank(unit)];
    }
  }
  RootCountReport report;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(std::abs(lu.determinant()) > 0.0) || lu.rcond() < kLinearConditionFloor) {
    report.degenerate = true;
    return report;
  }
  const Eigen::VectorXd y = lu.solve(rhs);
  for (int j = 0; j < m; ++j) {
    if (!(y(j) > 0.0)) return report;
  }
  report.count = 1;
  report.points.emplace_back(y.data(), y.data() + m);
  return report;
}

}  // namespace gamepoly
