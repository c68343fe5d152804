#include "gamepoly/sampling.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gamepoly {

std::string_view to_string(Distribution dist) {
  switch (dist) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::rademacher: return "rademacher";
    case Distribution::uniform: return "uniform";
  }
  return "unknown";
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::aggregate_a: return "aggregateA";
    case Scheme::payoff_b: return "payoffB";
    case Scheme::scaled_kss: return "scaledKSS";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "rademacher") return Distribution::rademacher;
  if (name == "uniform") return Distribution::uniform;
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

Scheme parse_scheme(std::string_view name) {
  if (name == "aggregateA") return Scheme::aggregate_a;
  if (name == "payoffB") return Scheme::payoff_b;
  if (name == "scaledKSS") return Scheme::scaled_kss;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

bool scheme_conforms(Scheme scheme, int n) { return scheme != Scheme::payoff_b || n == 2; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index, std::uint64_t retry) {
  return splitmix64(splitmix64(splitmix64(master) ^ index) ^ retry);
}

double sample_scalar(Distribution dist, SeededStream& stream) {
  switch (dist) {
    case Distribution::gaussian: {
      boost::random::normal_distribution<double> normal(0.0, 1.0);
      return normal(stream);
    }
    case Distribution::rademacher:
      return (stream() >> 63) != 0 ? 1.0 : -1.0;
    case Distribution::uniform: {
      boost::random::uniform_real_distribution<double> uniform(-1.0, 1.0);
      return uniform(stream);
    }
  }
  throw std::invalid_argument("unknown distribution");
}

CoefficientSystem sample_game(int n, int d, Distribution dist, Scheme scheme, SeededStream& stream) {
  validate_shape(n, d);
  if (scheme == Scheme::scaled_kss) {
    const ExponentLayout& layout = exponent_layout(n - 1, d - 1);
    std::vector<double> weights(layout.size());
    std::vector<int> full(n);
    for (std::size_t r = 0; r < layout.size(); ++r) {
      const auto k = layout.index(r);
      std::copy(k.begin(), k.end(), full.begin());
      full.back() = layout.implied_last(r);
      weights[r] = std::sqrt(multinomial_real(d - 1, full));
    }
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n - 1) * layout.size());
    for (int i = 0; i < n - 1; ++i) {
      for (std::size_t r = 0; r < layout.size(); ++r) entries.push_back(weights[r] * sample_scalar(dist, stream));
    }
    return CoefficientSystem(n, d, std::move(entries));
  }

  const std::uint64_t tuples = tuple_count(n, d);
  if (tuples > kMaxTupleDraws) {
    throw std::invalid_argument("scheme " + std::string(to_string(scheme)) + " would draw " + std::to_string(tuples) +
                                " payoffs per game; use scaledKSS for this group size");
  }
  if (scheme == Scheme::aggregate_a) {
    std::vector<double> beta(static_cast<std::size_t>(n - 1) * tuples);
    for (double& b : beta) b = sample_scalar(dist, stream);
    return aggregate_coefficients(BetaTensor(n, d, std::move(beta)));
  }
  std::vector<double> alpha(static_cast<std::size_t>(n) * tuples);
  for (double& a : alpha) a = sample_scalar(dist, stream);
  return aggregate_coefficients(BetaTensor::from_payoff(PayoffTensor(n, d, std::move(alpha))));
}

UnivariatePoly sample_kss_univariate(int degree, Distribution dist, SeededStream& stream) {
  if (degree < 1) throw std::invalid_argument("KSS polynomial degree must be at least 1");
  std::vector<double> coeffs(degree + 1);
  for (int k = 0; k <= degree; ++k) coeffs[k] = std::sqrt(binomial_real(degree, k)) * sample_scalar(dist, stream);
  return UnivariatePoly(std::move(coeffs));
}

UnivariatePoly sample_symmetric_univariate(int d, Distribution dist, SeededStream& stream) {
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  std::vector<double> coeffs(d);
  for (int k = 0; k < d; ++k) coeffs[k] = binomial_real(d - 1, k) * sample_scalar(dist, stream);
  return UnivariatePoly(std::move(coeffs));
}

}  // namespace gamepoly
