#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "gamepoly/sampling.hpp"

using namespace gamepoly;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

template <typename Draw>
Moments moments(int samples, Draw draw) {
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = draw(i);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / samples;
  return {mean, (sq - samples * mean * mean) / (samples - 1)};
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("names round trip") {
    for (auto dist : {Distribution::gaussian, Distribution::rademacher, Distribution::uniform}) {
      CHECK(parse_distribution(to_string(dist)) == dist);
    }
    for (auto scheme : {Scheme::aggregate_a, Scheme::payoff_b, Scheme::scaled_kss}) {
      CHECK(parse_scheme(to_string(scheme)) == scheme);
    }
    CHECK(to_string(Scheme::aggregate_a) == "aggregateA");
    CHECK(to_string(Scheme::payoff_b) == "payoffB");
    CHECK(to_string(Scheme::scaled_kss) == "scaledKSS");
    CHECK_THROWS_AS(parse_distribution("cauchy"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme("other"), std::invalid_argument);
  }

  TEST_CASE("scheme conformance") {
    CHECK(scheme_conforms(Scheme::aggregate_a, 4));
    CHECK(scheme_conforms(Scheme::scaled_kss, 4));
    CHECK(scheme_conforms(Scheme::payoff_b, 2));
    CHECK_FALSE(scheme_conforms(Scheme::payoff_b, 3));
  }

  TEST_CASE("mixing function reference values") {
    // Independent evaluation of the published splitmix64 finaliser.
    auto reference = [](std::uint64_t x) {
      x += 0x9E3779B97F4A7C15ULL;
      x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
      x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
      return x ^ (x >> 31);
    };
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    for (std::uint64_t x : {1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) CHECK(splitmix64(x) == reference(x));
    CHECK(substream_seed(7, 3, 2) == reference(reference(reference(7) ^ 3) ^ 2));
    CHECK(substream_seed(7, 3) == substream_seed(7, 3, 0));
  }

  TEST_CASE("streams are deterministic and distinct") {
    SeededStream a(5, 10), b(5, 10), c(5, 11), r(5, 10, 1);
    const auto va = a(), vb = b(), vc = c(), vr = r();
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vr);

    SeededStream s1(9, 0), s2(9, 0);
    CHECK(sample_game(3, 3, Distribution::gaussian, Scheme::aggregate_a, s1) ==
          sample_game(3, 3, Distribution::gaussian, Scheme::aggregate_a, s2));
  }

  TEST_CASE("scalar laws") {
    const int samples = 200000;
    SeededStream g(1, 0), u(1, 1), r(1, 2);
    const Moments gm = moments(samples, [&](int) { return sample_scalar(Distribution::gaussian, g); });
    CHECK(std::abs(gm.mean) < 0.01);
    CHECK(std::abs(gm.variance - 1.0) < 0.01);
    const Moments um = moments(samples, [&](int) {
      const double v = sample_scalar(Distribution::uniform, u);
      REQUIRE(std::abs(v) <= 1.0);
      return v;
    });
    CHECK(std::abs(um.mean) < 0.005);
    CHECK(std::abs(um.variance - 1.0 / 3.0) < 0.005);
    std::set<double> values;
    const Moments rm = moments(samples, [&](int) {
      const double v = sample_scalar(Distribution::rademacher, r);
      values.insert(v);
      return v;
    });
    CHECK(values == std::set<double>{-1.0, 1.0});
    CHECK(std::abs(rm.mean) < 0.01);
  }

  TEST_CASE("aggregated coefficient variances follow class sizes") {
    // Var(b_k) = C(d-1, k) for unit-variance tuple draws.
    const int d = 4, samples = 40000;
    for (int k = 0; k < d; ++k) {
      const Moments m = moments(samples, [&](int i) {
        SeededStream s(21, i);
        return to_univariate(sample_game(2, d, Distribution::gaussian, Scheme::aggregate_a, s))[k];
      });
      const double expected = static_cast<double>(binomial_coefficient(d - 1, k));
      CHECK(std::abs(m.variance / expected - 1.0) < 0.05);
      CHECK(std::abs(m.mean) < 0.05 * std::sqrt(expected));
    }
  }

  TEST_CASE("raw payoff differences double the variance") {
    const int d = 3, samples = 40000;
    for (int k = 0; k < d; ++k) {
      const Moments m = moments(samples, [&](int i) {
        SeededStream s(22, i);
        return to_univariate(sample_game(2, d, Distribution::gaussian, Scheme::payoff_b, s))[k];
      });
      const double expected = 2.0 * static_cast<double>(binomial_coefficient(d - 1, k));
      CHECK(std::abs(m.variance / expected - 1.0) < 0.05);
    }
  }

  TEST_CASE("scaled coefficients match aggregated moments") {
    const int d = 6, samples = 40000;
    for (int k = 0; k < d; ++k) {
      const Moments direct = moments(samples, [&](int i) {
        SeededStream s(23, i);
        return to_univariate(sample_game(2, d, Distribution::gaussian, Scheme::scaled_kss, s))[k];
      });
      const Moments aggregated = moments(samples, [&](int i) {
        SeededStream s(24, i);
        return to_univariate(sample_game(2, d, Distribution::gaussian, Scheme::aggregate_a, s))[k];
      });
      CHECK(std::abs(direct.variance / aggregated.variance - 1.0) < 0.06);
    }
  }

  TEST_CASE("scaled polynomial magnitudes") {
    const int degree = 9;
    SeededStream s(3, 0);
    const UnivariatePoly p = sample_kss_univariate(degree, Distribution::rademacher, s);
    REQUIRE(p.degree() == degree);
    for (int k = 0; k <= degree; ++k) {
      CHECK(std::abs(p[k]) == doctest::Approx(std::sqrt(static_cast<double>(binomial_coefficient(degree, k)))));
    }
    const Moments m = moments(40000, [&](int i) {
      SeededStream t(4, i);
      return sample_kss_univariate(degree, Distribution::gaussian, t)[4];
    });
    CHECK(std::abs(m.variance / binomial_coefficient(degree, 4) - 1.0) < 0.05);
  }

  TEST_CASE("symmetric polynomial scale") {
    const int d = 7;
    SeededStream s(5, 0);
    const UnivariatePoly p = sample_symmetric_univariate(d, Distribution::rademacher, s);
    REQUIRE(p.degree() == d - 1);
    for (int k = 0; k < d; ++k) {
      CHECK(std::abs(p[k]) == static_cast<double>(binomial_coefficient(d - 1, k)));
    }
    const Moments m = moments(40000, [&](int i) {
      SeededStream t(6, i);
      return sample_symmetric_univariate(d, Distribution::gaussian, t)[2];
    });
    const double c = static_cast<double>(binomial_coefficient(d - 1, 2));
    CHECK(std::abs(m.variance / (c * c) - 1.0) < 0.05);
  }

  TEST_CASE("multi-strategy shapes") {
    SeededStream s(8, 0);
    const CoefficientSystem sys = sample_game(4, 3, Distribution::uniform, Scheme::aggregate_a, s);
    CHECK(sys.equations() == 3);
    CHECK(sys.layout().size() == 10);
    CHECK_THROWS_AS(sample_game(2, 40, Distribution::gaussian, Scheme::aggregate_a, s), std::invalid_argument);
  }
}
