#include "gamepoly/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gamepoly/cubature.hpp"
#include "gamepoly/errors.hpp"
#include "gamepoly/game_model.hpp"
#include "gamepoly/sampling.hpp"

namespace gamepoly {
namespace {

constexpr double kImaginaryResidue = 1e-10;
constexpr int kMaxQuadratureDegree = 5;
constexpr std::uint64_t kMcBatches = 100;

void check_component(int d, int m, int k) {
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  if (m < 0 || k < 0 || m + 2 * k > d - 1) {
    throw std::invalid_argument("component (m=" + std::to_string(m) + ", k=" + std::to_string(k) +
                                ") needs m + 2k <= d - 1");
  }
}

void check_shape(const RootConfiguration& config, int d, int m, int k) {
  check_component(d, m, k);
  config.validate();
  if (static_cast<int>(config.positive.size()) != m || static_cast<int>(config.pairs.size()) != k ||
      config.size() != d - 1) {
    throw std::invalid_argument("root configuration does not match (d, m, k)");
  }
}

double factorial(int n) { return boost::math::factorial<double>(static_cast<unsigned>(n)); }

// 2^k / (m! k! q!) and r_1..r_k Delta, the factors shared by both integrands.
double measure_factor(int d, int m, int k, const RootConfiguration& config, double delta) {
  const int q = d - 1 - m - 2 * k;
  double r = 1.0;
  for (const ComplexPair& p : config.pairs) r *= p.radius;
  return std::ldexp(1.0, k) / (factorial(m) * factorial(k) * factorial(q)) * r * delta;
}

// Gamma(d/2) / (pi^(d/2) prod_i C(d-1, i)^(1/2)).
double gaussian_normalisation(int d) {
  double prod = 1.0;
  for (int i = 0; i < d; ++i) prod *= std::sqrt(binomial_real(d - 1, i));
  return std::tgamma(d / 2.0) / (std::pow(std::numbers::pi, d / 2.0) * prod);
}

// Maps a point of the unit cube to a configuration; returns the Jacobian,
// or 0 on the measure-zero boundary.
double unit_to_configuration(std::span<const double> u, int m, int q, int k, RootConfiguration& config) {
  double jacobian = 1.0;
  std::size_t at = 0;
  auto gap = [&](double t) {
    jacobian /= (1.0 - t) * (1.0 - t);
    return t / (1.0 - t);
  };
  for (double t : u) {
    if (!(t > 0.0 && t < 1.0)) return 0.0;
  }
  config.positive.resize(m);
  config.negative.resize(q);
  config.pairs.resize(k);
  double cum = 0.0;
  for (int i = 0; i < m; ++i) config.positive[i] = cum += gap(u[at++]);
  cum = 0.0;
  for (int i = 0; i < q; ++i) config.negative[i] = -(cum += gap(u[at++]));
  for (int i = 0; i < k; ++i) {
    config.pairs[i].radius = gap(u[at++]);
    config.pairs[i].angle = std::numbers::pi * u[at++];
    jacobian *= std::numbers::pi;
  }
  return jacobian;
}

ComponentValue stratified_mc(const Integrand& f, int dim, const QuadConfig& config, std::uint64_t stream_tag) {
  const std::uint64_t per_batch = std::max<std::uint64_t>(config.mc_samples / kMcBatches, 2);
  std::vector<double> batch_means;
  std::vector<std::vector<std::uint64_t>> strata(dim, std::vector<std::uint64_t>(per_batch));
  std::vector<double> x(dim);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t b = 0; b < kMcBatches; ++b) {
    SeededStream stream(config.seed ^ stream_tag, b);
    // Latin hypercube: one point per stratum along every axis.
    for (auto& perm : strata) {
      for (std::uint64_t i = 0; i < per_batch; ++i) perm[i] = i;
      for (std::uint64_t i = per_batch - 1; i > 0; --i) {
        boost::random::uniform_int_distribution<std::uint64_t> pick(0, i);
        std::swap(perm[i], perm[pick(stream)]);
      }
    }
    long double sum = 0;
    for (std::uint64_t i = 0; i < per_batch; ++i) {
      for (int j = 0; j < dim; ++j) x[j] = (strata[j][i] + unit(stream)) / per_batch;
      sum += f(x);
    }
    batch_means.push_back(static_cast<double>(sum / per_batch));
  }
  long double mean = 0;
  for (double v : batch_means) mean += v;
  mean /= batch_means.size();
  long double var = 0;
  for (double v : batch_means) var += (v - mean) * (v - mean);
  var /= batch_means.size() - 1;
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / batch_means.size()))};
}

}  // namespace

void RootConfiguration::validate() const {
  for (double x : positive) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("positive roots must be finite and > 0");
  }
  for (double x : negative) {
    if (!(x < 0.0) || !std::isfinite(x)) throw std::invalid_argument("negative roots must be finite and < 0");
  }
  for (const ComplexPair& p : pairs) {
    if (!(p.radius > 0.0) || !std::isfinite(p.radius)) throw std::invalid_argument("pair radius must be finite and > 0");
    if (!(p.angle >= 0.0 && p.angle <= std::numbers::pi)) throw std::invalid_argument("pair angle must lie in [0, pi]");
  }
}

std::vector<std::complex<double>> RootConfiguration::roots() const {
  std::vector<std::complex<double>> out;
  for (double x : positive) out.emplace_back(x, 0.0);
  for (double x : negative) out.emplace_back(x, 0.0);
  for (const ComplexPair& p : pairs) {
    out.push_back(std::polar(p.radius, p.angle));
    out.push_back(std::polar(p.radius, -p.angle));
  }
  return out;
}

SigmaDelta sigma_delta(const RootConfiguration& config) {
  config.validate();
  const auto roots = config.roots();
  const std::size_t n = roots.size();
  // e[j] = sigma_j, built one root at a time; mag[j] bounds |sigma_j|.
  std::vector<std::complex<double>> e(n + 1, 0.0);
  std::vector<double> mag(n + 1, 0.0);
  e[0] = 1.0;
  mag[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j >= 1; --j) {
      e[j] += roots[i] * e[j - 1];
      mag[j] += std::abs(roots[i]) * mag[j - 1];
    }
  }
  SigmaDelta out;
  for (std::size_t j = 0; j <= n; ++j) {
    if (std::abs(e[j].imag()) > kImaginaryResidue * std::max(mag[j], 1e-300)) {
      throw std::domain_error("sigma_" + std::to_string(j) + " has an imaginary residue");
    }
    out.sigma.push_back(e[j].real());
  }
  out.delta = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.delta *= std::abs(roots[i] - roots[j]);
  }
  return out;
}

double pm_integrand_gaussian(int d, int m, int k, const RootConfiguration& config) {
  check_shape(config, d, m, k);
  const SigmaDelta sd = sigma_delta(config);
  double quadratic = 0.0;
  for (int i = 0; i < d; ++i) quadratic += sd.sigma[i] * sd.sigma[i] / binomial_real(d - 1, i);
  return measure_factor(d, m, k, config, sd.delta) * gaussian_normalisation(d) * std::pow(quadratic, -d / 2.0);
}

double pm_integrand_general(int d, int m, int k, const RootConfiguration& config, const CoefficientDensity& density) {
  check_shape(config, d, m, k);
  const SigmaDelta sd = sigma_delta(config);
  // a * prod(y - root) has b_{D-j} = a (-1)^j sigma_j.
  const int degree = d - 1;
  std::vector<double> monic(d);
  for (int j = 0; j <= degree; ++j) monic[degree - j] = (j % 2 == 0 ? 1.0 : -1.0) * sd.sigma[j];
  std::vector<double> b(d);
  auto scale_integrand = [&](double a) {
    for (int i = 0; i < d; ++i) b[i] = a * monic[i];
    return density(b) * std::pow(std::abs(a), degree);
  };
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double scale_integral =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(scale_integrand, -inf, inf, 15, 1e-12);
  return measure_factor(d, m, k, config, sd.delta) * scale_integral;
}

std::string_view to_string(QuadMethod method) {
  return method == QuadMethod::cubature ? "cubature" : "stratified-mc";
}

QuadMethod parse_quad_method(std::string_view name) {
  if (name == "cubature") return QuadMethod::cubature;
  if (name == "stratified-mc") return QuadMethod::stratified_mc;
  throw std::invalid_argument("unknown quadrature method '" + std::string(name) + "'");
}

void validate(const QuadConfig& config) {
  if (!(config.tolerance > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (config.max_refinements < 1) throw std::invalid_argument("max_refinements must be at least 1");
  if (config.method == QuadMethod::stratified_mc && config.mc_samples < 2 * kMcBatches) {
    throw std::invalid_argument("stratified-mc needs at least " + std::to_string(2 * kMcBatches) + " samples");
  }
}

ComponentValue pm_component(int d, int m, int k, const QuadConfig& config) {
  check_component(d, m, k);
  if (d > kMaxQuadratureDegree) throw std::invalid_argument("p_m quadrature supports d <= 5");
  validate(config);
  const int q = d - 1 - m - 2 * k;
  const int dim = d - 1;
  // Ordering the real roots removes the m! and q! symmetry factors.
  const double ordering = factorial(m) * factorial(q);
  RootConfiguration scratch;
  auto f = [&](std::span<const double> u) {
    const double jacobian = unit_to_configuration(u, m, q, k, scratch);
    if (jacobian == 0.0) return 0.0;
    const double v = ordering * jacobian * pm_integrand_gaussian(d, m, k, scratch);
    return std::isfinite(v) ? v : 0.0;
  };
  if (config.method == QuadMethod::stratified_mc) {
    const std::uint64_t tag = (static_cast<std::uint64_t>(m) << 32) | static_cast<std::uint64_t>(k);
    return stratified_mc(f, dim, config, splitmix64(tag));
  }
  const CubatureResult r = adaptive_cubature(f, dim, config.tolerance, config.max_refinements);
  if (!r.converged) {
    throw QuadratureError("p_{" + std::to_string(m) + "," + std::to_string(2 * k) + "," + std::to_string(q) +
                              "} error estimate " + std::to_string(r.error) + " above tolerance after " +
                              std::to_string(r.regions) + " regions",
                          r.value, r.error);
  }
  return {r.value, r.error};
}

double PmTable::total() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double PmTable::total_error() const {
  double s = 0.0;
  for (double e : errors) s += e;
  return s;
}

PmTable pm_distribution(int d, const QuadConfig& config) {
  if (d < 2 || d > kMaxQuadratureDegree) throw std::invalid_argument("p_m quadrature supports 2 <= d <= 5");
  validate(config);
  PmTable table;
  table.d = d;
  table.method = config.method == QuadMethod::cubature ? "quadrature" : "stratified-mc";
  for (int m = 0; m <= d - 1; ++m) {
    double value = 0.0;
    double error = 0.0;
    for (int k = 0; m + 2 * k <= d - 1; ++k) {
      const ComponentValue c = pm_component(d, m, k, config);
      value += c.value;
      error += c.error;
    }
    table.values.push_back(value);
    table.errors.push_back(error);
  }
  return table;
}

}  // namespace gamepoly
