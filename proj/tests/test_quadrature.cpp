#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gamepoly/cubature.hpp"
#include "gamepoly/errors.hpp"
#include "gamepoly/game_model.hpp"
#include "gamepoly/quadrature.hpp"

using namespace gamepoly;

namespace {

QuadConfig fast_config(double tolerance = 1e-7) {
  QuadConfig c;
  c.tolerance = tolerance;
  return c;
}

// Independent product of N(0, C(d-1, i)) densities.
double gaussian_density(int d, std::span<const double> b) {
  double v = 1.0;
  for (int i = 0; i < d; ++i) {
    const double var = binomial_real(d - 1, i);
    v *= std::exp(-b[i] * b[i] / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
  }
  return v;
}

// Coefficients of prod (y - root) by repeated multiplication.
std::vector<std::complex<double>> expand(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;  // lowest degree first, monic
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("elementary symmetric functions and discriminant") {
    RootConfiguration two{{1.0, 2.0}, {}, {}};
    const SigmaDelta a = sigma_delta(two);
    REQUIRE(a.sigma.size() == 3);
    CHECK(a.sigma[0] == 1.0);
    CHECK(a.sigma[1] == 3.0);
    CHECK(a.sigma[2] == 2.0);
    CHECK(a.delta == 1.0);

    // Roots 1, -1, +-i give y^4 - 1; six pairwise distances multiply to 16.
    RootConfiguration mixed{{1.0}, {-1.0}, {{1.0, std::numbers::pi / 2}}};
    const SigmaDelta b = sigma_delta(mixed);
    REQUIRE(b.sigma.size() == 5);
    CHECK(std::abs(b.sigma[1]) < 1e-15);
    CHECK(std::abs(b.sigma[2]) < 1e-15);
    CHECK(std::abs(b.sigma[3]) < 1e-15);
    CHECK(b.sigma[4] == doctest::Approx(-1.0));
    CHECK(b.delta == doctest::Approx(16.0));

    CHECK_THROWS_AS(sigma_delta(RootConfiguration{{-1.0}, {}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(sigma_delta(RootConfiguration{{}, {}, {{1.0, 4.0}}}), std::invalid_argument);
  }

  TEST_CASE("sigma matches direct expansion") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> pos(0.1, 3.0), ang(0.0, std::numbers::pi);
    for (int t = 0; t < 200; ++t) {
      RootConfiguration c;
      for (int i = 0; i < t % 3; ++i) c.positive.push_back(pos(rng));
      for (int i = 0; i < (t / 3) % 3; ++i) c.negative.push_back(-pos(rng));
      for (int i = 0; i < t % 2 + 1; ++i) c.pairs.push_back({pos(rng), ang(rng)});
      const auto coeffs = expand(c.roots());
      const SigmaDelta sd = sigma_delta(c);
      const int n = c.size();
      for (int j = 0; j <= n; ++j) {
        // Monic coefficient of y^(n-j) is (-1)^j sigma_j.
        const double expected = (j % 2 ? -1.0 : 1.0) * coeffs[n - j].real();
        CHECK(sd.sigma[j] == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
      }
    }
  }

  TEST_CASE("two-player integrand is the Cauchy density") {
    for (double x : {0.1, 0.5, 1.0, 3.0, 20.0}) {
      const double cauchy = 1.0 / (std::numbers::pi * (1.0 + x * x));
      CHECK(pm_integrand_gaussian(2, 1, 0, RootConfiguration{{x}, {}, {}}) == doctest::Approx(cauchy).epsilon(1e-14));
      CHECK(pm_integrand_gaussian(2, 0, 0, RootConfiguration{{}, {-x}, {}}) == doctest::Approx(cauchy).epsilon(1e-14));
    }
  }

  TEST_CASE("integrand vanishes on coincident roots and is nonnegative") {
    CHECK(pm_integrand_gaussian(4, 3, 0, RootConfiguration{{1.0, 1.0, 2.0}, {}, {}}) == 0.0);
    CHECK(pm_integrand_gaussian(3, 0, 1, RootConfiguration{{}, {}, {{1.0, 0.0}}}) == 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(0.01, 10.0), ang(0.0, std::numbers::pi);
    for (int t = 0; t < 500; ++t) {
      RootConfiguration c{{pos(rng)}, {-pos(rng)}, {{pos(rng), ang(rng)}}};
      CHECK(pm_integrand_gaussian(5, 1, 1, c) >= 0.0);
    }
    CHECK_THROWS_AS(pm_integrand_gaussian(4, 1, 0, RootConfiguration{{1.0}, {}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(pm_integrand_gaussian(4, 2, 1, RootConfiguration{{1.0, 2.0}, {}, {{1.0, 1.0}}}),
                    std::invalid_argument);
  }

  TEST_CASE("general density reproduces the gaussian integrand") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> pos(0.2, 4.0), ang(0.1, 3.0);
    for (int t = 0; t < 30; ++t) {
      for (int d : {2, 3, 4, 5}) {
        RootConfiguration c;
        int m = 0, k = 0;
        if (d >= 3 && t % 2) {
          c.pairs.push_back({pos(rng), ang(rng)});
          k = 1;
        }
        while (c.size() < d - 1) {
          if (c.positive.size() <= c.negative.size()) {
            c.positive.push_back(pos(rng));
            ++m;
          } else {
            c.negative.push_back(-pos(rng));
          }
        }
        const double general =
            pm_integrand_general(d, m, k, c, [d](std::span<const double> b) { return gaussian_density(d, b); });
        CHECK(general == doctest::Approx(pm_integrand_gaussian(d, m, k, c)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("two-player components") {
    const QuadConfig c = fast_config(1e-9);
    const ComponentValue one = pm_component(2, 1, 0, c);
    const ComponentValue none = pm_component(2, 0, 0, c);
    CHECK(std::abs(one.value - 0.5) < 1e-6);
    CHECK(std::abs(none.value - 0.5) < 1e-6);
  }

  TEST_CASE("positive and negative roots are exchangeable") {
    const QuadConfig c = fast_config(1e-7);
    for (int d : {3, 4}) {
      for (int k = 0; 2 * k <= d - 1; ++k) {
        for (int m = 0; m + 2 * k <= d - 1; ++m) {
          const int q = d - 1 - m - 2 * k;
          const ComponentValue a = pm_component(d, m, k, c);
          const ComponentValue b = pm_component(d, q, k, c);
          CHECK(std::abs(a.value - b.value) <= 4 * (a.error + b.error) + 1e-9);
        }
      }
    }
  }

  TEST_CASE("distribution sums to one with the known mean") {
    for (int d : {2, 3, 4}) {
      const PmTable t = pm_distribution(d, fast_config(1e-7));
      CHECK(t.method == "quadrature");
      REQUIRE(t.values.size() == static_cast<std::size_t>(d));
      CHECK(std::abs(t.total() - 1.0) < 1e-5);
      double mean = 0;
      for (int m = 0; m < d; ++m) mean += m * t.values[m];
      CHECK(std::abs(mean - std::sqrt(d - 1.0) / 2.0) < 1e-5);
    }
  }

  TEST_CASE("stratified sampling agrees with cubature") {
    QuadConfig mc;
    mc.method = QuadMethod::stratified_mc;
    mc.mc_samples = 200000;
    const PmTable sampled = pm_distribution(3, mc);
    const PmTable exact = pm_distribution(3, fast_config(1e-8));
    CHECK(sampled.method == "stratified-mc");
    for (int m = 0; m < 3; ++m) {
      CHECK(std::abs(sampled.values[m] - exact.values[m]) < 4 * sampled.errors[m] + 1e-6);
    }
  }

  TEST_CASE("configuration errors") {
    QuadConfig bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    CHECK_THROWS_AS(pm_distribution(6, QuadConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(pm_component(3, 1, 1, QuadConfig{}), std::invalid_argument);
    CHECK(parse_quad_method("stratified-mc") == QuadMethod::stratified_mc);
    CHECK_THROWS_AS(parse_quad_method("simpson"), std::invalid_argument);
    QuadConfig starved = fast_config(1e-13);
    starved.max_refinements = 4;
    CHECK_THROWS_AS(pm_component(4, 1, 1, starved), QuadratureError);
  }

  TEST_CASE("cubature on known integrals") {
    const CubatureResult line =
        adaptive_cubature([](std::span<const double> x) { return x[0] * x[0]; }, 1, 1e-12, 100);
    CHECK(line.converged);
    CHECK(line.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const CubatureResult plane =
        adaptive_cubature([](std::span<const double> x) { return std::exp(x[0] + x[1]); }, 2, 1e-10, 10000);
    CHECK(plane.converged);
    CHECK(std::abs(plane.value - (std::numbers::e - 1) * (std::numbers::e - 1)) < 1e-9);

    const CubatureResult cube = adaptive_cubature(
        [](std::span<const double> x) { return std::sin(x[0]) * std::cos(x[1]) * (1.0 + x[2] * x[3]); }, 4, 1e-9,
        100000);
    const double exact = (1.0 - std::cos(1.0)) * std::sin(1.0) * 1.25;
    CHECK(cube.converged);
    CHECK(std::abs(cube.value - exact) < 1e-8);

    const CubatureResult starved = adaptive_cubature(
        [](std::span<const double> x) { return 1.0 / std::sqrt(std::abs(x[0] - x[1]) + 1e-12); }, 2, 1e-12, 20);
    CHECK_FALSE(starved.converged);
    CHECK(starved.regions <= 20);
    CHECK_THROWS_AS(adaptive_cubature([](std::span<const double>) { return 1.0; }, 0, 1e-6, 10),
                    std::invalid_argument);
  }
}
