#pragma once

// Probabilities p_m that a d-player two-strategy game with Gaussian payoff
// differences has exactly m internal equilibria, as integrals over the root
// configurations of the random polynomial.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gamepoly {

struct ComplexPair {
  double radius;  // > 0
  double angle;   // in [0, pi]; the pair is radius * exp(+-i angle)
};

// Root multiset of a degree-(d-1) polynomial: m positive reals, q negative
// reals and k conjugate pairs, with m + q + 2k = d - 1.
struct RootConfiguration {
  std::vector<double> positive;
  std::vector<double> negative;
  std::vector<ComplexPair> pairs;

  int size() const { return static_cast<int>(positive.size() + negative.size() + 2 * pairs.size()); }
  // Throws std::invalid_argument on sign, radius or angle violations.
  void validate() const;
  std::vector<std::complex<double>> roots() const;
};

struct SigmaDelta {
  // Elementary symmetric functions sigma_0..sigma_{d-1} of the roots.
  std::vector<double> sigma;
  // Product of |root_i - root_j| over all unordered pairs.
  double delta;
};

// Throws std::domain_error when a sigma_j keeps an imaginary part above
// 1e-10 times its magnitude (the configuration is not closed under
// conjugation).
SigmaDelta sigma_delta(const RootConfiguration& config);

// Full integrand of the (m, 2k, q) component for Gaussian coefficients with
// variances C(d-1, i): prefactor 2^k / (m! k! q!), the Gamma/pi/variance
// normalisation, r_1..r_k, (sum sigma_i^2 / C(d-1, i))^(-d/2) and Delta.
double pm_integrand_gaussian(int d, int m, int k, const RootConfiguration& config);

// Joint density of the coefficients (b_0..b_{d-1}), lowest degree first.
using CoefficientDensity = std::function<double(std::span<const double>)>;

// General-density integrand: the Gaussian form's scale integral written out,
// int_R density(a * c(roots)) |a|^(d-1) da, where c(roots) is the monic
// coefficient vector, times 2^k / (m! k! q!) r_1..r_k Delta.
double pm_integrand_general(int d, int m, int k, const RootConfiguration& config, const CoefficientDensity& density);

enum class QuadMethod { cubature, stratified_mc };

std::string_view to_string(QuadMethod method);
QuadMethod parse_quad_method(std::string_view name);

struct QuadConfig {
  // Absolute error target per component.
  double tolerance = 1e-6;
  // Region budget for cubature.
  std::size_t max_refinements = 200000;
  QuadMethod method = QuadMethod::cubature;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t seed = 1;
};

void validate(const QuadConfig& config);

struct ComponentValue {
  double value;
  double error;
};

// One (m, 2k, q) component over the compactified domain. Real roots are
// ordered and written as cumulative gaps g = t / (1 - t); radii use
// r = s / (1 - s); angles alpha = pi u. Cubature throws QuadratureError when
// the error estimate stays above tolerance after the region budget.
// Stratified MC never throws on budget; its error is a batch standard error.
ComponentValue pm_component(int d, int m, int k, const QuadConfig& config);

struct PmTable {
  int d = 0;
  std::vector<double> values;
  std::vector<double> errors;
  // "quadrature" (cubature), "stratified-mc" (sampled integral of the same
  // integrand) or "monte-carlo" (empirical histogram of a campaign).
  std::string method;

  double total() const;
  double total_error() const;
};

// Supports d in [2, 5].
PmTable pm_distribution(int d, const QuadConfig& config);

}  // namespace gamepoly
