#pragma once

// Positive real root counting: Sturm chains, Bernstein-basis subdivision,
// linear systems for two-player-per-group games, resultant elimination for
// three-strategy games, and a companion-matrix oracle.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gamepoly/game_model.hpp"
#include "gamepoly/polynomial.hpp"

namespace gamepoly {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

struct RootCountReport {
  // Distinct roots in the open positive orthant.
  int count = 0;
  // Univariate solvers: one isolating interval and one refined root per count.
  std::vector<Interval> intervals;
  std::vector<double> roots;
  // Multivariate solvers: one orthant point per count.
  std::vector<std::vector<double>> points;
  // Probability-zero configuration the solver could not certify; the caller
  // resamples.
  bool degenerate = false;
};

// Values with |v| <= kSturmAmbiguity * scale are treated as sign-ambiguous.
inline constexpr double kSturmAmbiguity = 1e-12;

// Above this degree the double-precision Sturm chain loses the sign of its
// trailing members; count_positive switches to Bernstein subdivision.
inline constexpr int kSturmMaxDegree = 32;

// p, p', -rem(p, p'), ... with each member rescaled to unit max-norm. The
// chain stops at the last nonzero remainder, which is gcd(p, p') when p has
// repeated roots; sign-variation differences then count distinct roots.
class SturmChain {
 public:
  explicit SturmChain(const UnivariatePoly& p);

  std::span<const UnivariatePoly> members() const { return members_; }
  // True when a remainder cancelled to within the ambiguity band without
  // being exactly zero, or a leading coefficient was dropped as noise.
  bool ambiguous() const { return ambiguous_; }
  bool squarefree() const { return members_.back().degree() == 0; }

  std::optional<int> variations_at(double x) const;
  std::optional<int> variations_at_zero_plus() const;
  std::optional<int> variations_at_zero_minus() const;
  int variations_at_positive_infinity() const;
  int variations_at_negative_infinity() const;

 private:
  std::vector<UnivariatePoly> members_;
  bool ambiguous_ = false;
};

// Distinct roots in (0, inf) from the Sturm chain. Throws DegenerateError on
// the zero polynomial; sign ambiguities set report.degenerate.
RootCountReport sturm_count_positive(const UnivariatePoly& p);

// Exact rational Sturm count for integer coefficients (rademacher-type
// ensembles), free of rounding.
int exact_sturm_count_positive(std::span<const std::int64_t> coeffs);

// Distinct roots in (0, inf) by Descartes' rule on the Bernstein form of
// p(t / (1 - t)) over (0, 1) with de Casteljau subdivision and a running
// rounding-error bound. Fills isolating intervals (in y) for each root.
RootCountReport subdivision_count_positive(const UnivariatePoly& p);

// Campaign counter: Sturm up to kSturmMaxDegree, subdivision beyond.
RootCountReport count_positive(const UnivariatePoly& p);

// Isolating intervals for all positive roots refined to width below
// tol * max(1, |root|). Throws ConvergenceError if refinement stalls and
// DegenerateError on the zero polynomial.
RootCountReport isolate_refine(const UnivariatePoly& p, double tol);

// d = 2 systems are affine in y: one equilibrium iff the unique solution is
// positive. A numerically singular matrix sets the degenerate flag.
RootCountReport solve_linear(const CoefficientSystem& system);

// Polynomial in (y1, y2) with total degree <= degree; c(i, j) multiplies
// y1^i y2^j.
class BivariatePoly {
 public:
  explicit BivariatePoly(int degree);
  BivariatePoly(int degree, std::vector<double> coeffs);

  int degree() const { return degree_; }
  double coefficient(int i, int j) const;
  void set(int i, int j, double value);
  double evaluate(double y1, double y2) const;
  double max_abs_coefficient() const;

  // Coefficients in powers of the kept variable for the given power of the
  // other one, e.g. along_y1(j) = sum_i c(i, j) y1^i.
  UnivariatePoly along_y1(int power_of_y2) const;
  UnivariatePoly along_y2(int power_of_y1) const;
  // f(y1, .) and f(., y2) as univariate polynomials.
  UnivariatePoly at_y1(double y1) const;
  UnivariatePoly at_y2(double y2) const;
  BivariatePoly swapped() const;

 private:
  int degree_;
  std::vector<double> coeffs_;  // (degree+1)^2, row i = power of y1
};

struct BivariateSystem {
  BivariatePoly first;
  BivariatePoly second;

  static BivariateSystem from_system(const CoefficientSystem& system);
  BivariateSystem swapped() const { return {first.swapped(), second.swapped()}; }
};

enum class Variable { y1, y2 };

// Sylvester resultant eliminating `eliminated`; a polynomial in the other
// variable. Throws std::invalid_argument when neither polynomial depends on
// the eliminated variable.
UnivariatePoly resultant_eliminate(const BivariateSystem& system, Variable eliminated);

// Positive solutions of a three-strategy system with d in {2, 3}. Points are
// (y1, y2).
RootCountReport count_positive_bivariate(const BivariateSystem& system, double tol = 1e-8);

// All complex roots from the eigenvalues of the balanced companion matrix.
std::vector<std::complex<double>> companion_oracle(const UnivariatePoly& p);

// Roots with |imag| <= threshold * max(1, |z|) and real part > 0.
int positive_real_count(std::span<const std::complex<double>> roots, double imag_threshold = 1e-8);

}  // namespace gamepoly
