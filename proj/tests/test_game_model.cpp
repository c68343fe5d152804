#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "gamepoly/errors.hpp"
#include "gamepoly/game_model.hpp"
#include "gamepoly/polysolve.hpp"

using namespace gamepoly;

namespace {

std::vector<double> random_entries(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(count);
  for (double& x : v) x = normal(rng);
  return v;
}

std::vector<double> random_simplex_point(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e;
  std::vector<double> x(n);
  double s = 0;
  for (double& v : x) s += v = e(rng);
  for (double& v : x) v /= s;
  return x;
}

}  // namespace

TEST_SUITE("game_model") {
  TEST_CASE("multinomial coefficients") {
    CHECK(multinomial_coefficient(3, std::vector<int>{1, 1, 1}) == 6);
    CHECK(multinomial_coefficient(2, std::vector<int>{2, 0}) == 1);
    CHECK(multinomial_coefficient(3, std::vector<int>{2, 1}) == 3);
    CHECK(binomial_coefficient(62, 31) == 465428353255261088ULL);
    CHECK_THROWS_AS(multinomial_coefficient(3, std::vector<int>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(multinomial_coefficient(2, std::vector<int>{3, -1}), std::invalid_argument);
    CHECK_THROWS_AS(binomial_coefficient(80, 40), std::overflow_error);
    CHECK(binomial_real(80, 40) == doctest::Approx(1.0750720873333618e23).epsilon(1e-14));
  }

  TEST_CASE("class sizes cover every tuple") {
    for (int n = 2; n <= 4; ++n) {
      for (int d = 2; d <= 6; ++d) {
        const ExponentLayout& layout = exponent_layout(n - 1, d - 1);
        // Count tuples per class directly.
        std::map<std::vector<int>, std::uint64_t> classes;
        for_each_tuple(n, d, [&](std::span<const int> t, std::size_t) {
          std::vector<int> k(n - 1, 0);
          for (int s : t) {
            if (s < n - 1) ++k[s];
          }
          ++classes[k];
        });
        CHECK(classes.size() == layout.size());
        std::uint64_t total = 0;
        for (std::size_t r = 0; r < layout.size(); ++r) {
          const auto k = layout.index(r);
          std::vector<int> parts(k.begin(), k.end());
          parts.push_back(layout.implied_last(r));
          const std::uint64_t size = multinomial_coefficient(d - 1, parts);
          CHECK(classes[std::vector<int>(k.begin(), k.end())] == size);
          CHECK(layout.rank(k) == r);
          total += size;
        }
        CHECK(total == tuple_count(n, d));
      }
    }
  }

  TEST_CASE("two-strategy three-player coefficients") {
    // Flat order (i1, i2): (1,1) (1,2) (2,1) (2,2) in 1-based strategy labels.
    const BetaTensor beta(2, 3, {1.0, 2.0, 4.0, 8.0});
    const UnivariatePoly p = to_univariate(aggregate_coefficients(beta));
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 8.0);        // beta_{2,2}
    CHECK(p[1] == 2.0 + 4.0);  // beta_{1,2} + beta_{2,1}
    CHECK(p[2] == 1.0);        // beta_{1,1}
  }

  TEST_CASE("two-strategy four-player coefficients") {
    std::vector<double> entries(8);
    for (int i = 0; i < 8; ++i) entries[i] = std::ldexp(1.0, i);
    const BetaTensor beta(2, 4, entries);
    auto at = [&](int a, int b, int c) { return beta.at(0, std::vector<int>{a - 1, b - 1, c - 1}); };
    const UnivariatePoly p = to_univariate(aggregate_coefficients(beta));
    REQUIRE(p.size() == 4);
    CHECK(p[0] == at(2, 2, 2));
    CHECK(p[1] == at(1, 2, 2) + at(2, 1, 2) + at(2, 2, 1));
    CHECK(p[2] == at(1, 1, 2) + at(1, 2, 1) + at(2, 1, 1));
    CHECK(p[3] == at(1, 1, 1));
  }

  TEST_CASE("three-strategy three-player coefficients") {
    std::vector<double> entries(18);
    for (int i = 0; i < 18; ++i) entries[i] = std::ldexp(1.0, i);
    const BetaTensor beta(3, 3, entries);
    const CoefficientSystem sys = aggregate_coefficients(beta);
    for (int eq = 0; eq < 2; ++eq) {
      auto b = [&](int i, int j) { return beta.at(eq, std::vector<int>{i - 1, j - 1}); };
      auto c = [&](int k1, int k2) { return sys.coefficient(eq, std::vector<int>{k1, k2}); };
      CHECK(c(0, 2) == b(2, 2));
      CHECK(c(0, 1) == b(2, 3) + b(3, 2));
      CHECK(c(0, 0) == b(3, 3));
      CHECK(c(1, 1) == b(1, 2) + b(2, 1));
      CHECK(c(1, 0) == b(1, 3) + b(3, 1));
      CHECK(c(2, 0) == b(1, 1));
    }
  }

  TEST_CASE("payoff differences") {
    const PayoffTensor payoff(3, 2, {1, 2, 3, 10, 20, 30, 100, 200, 300});
    const BetaTensor beta = BetaTensor::from_payoff(payoff);
    CHECK(beta.row(0)[0] == -99.0);
    CHECK(beta.row(1)[2] == -270.0);
  }

  TEST_CASE("fitness examples") {
    const PayoffTensor payoff(2, 2, {3.0, 5.0, 7.0, 11.0});
    const std::vector<double> x{0.25, 0.75};
    const auto pi = fitness(payoff, x);
    CHECK(pi[0] == doctest::Approx(3.0 * 0.25 + 5.0 * 0.75));
    CHECK(pi[1] == doctest::Approx(7.0 * 0.25 + 11.0 * 0.75));

    const PayoffTensor big(3, 4, random_entries(3 * 27, 5));
    const auto at_vertex = fitness(big, std::vector<double>{1.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i) CHECK(at_vertex[i] == big.at(i, std::vector<int>{0, 0, 0}));

    const PayoffTensor flat(3, 4, std::vector<double>(81, 2.5));
    std::mt19937_64 rng(3);
    const auto pc = fitness(flat, random_simplex_point(3, rng));
    for (double v : pc) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

    CHECK_THROWS_AS(fitness(payoff, std::vector<double>{0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(fitness(payoff, std::vector<double>{-0.5, 1.5}), std::invalid_argument);
  }

  TEST_CASE("direct and aggregated fitness agree") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 3; ++n) {
      for (int d = 2; d <= 5; ++d) {
        const PayoffTensor payoff(n, d, random_entries(n * tuple_count(n, d), 100 * n + d));
        for (int trial = 0; trial < 20; ++trial) {
          const auto x = random_simplex_point(n, rng);
          const auto direct = fitness(payoff, x);
          const auto aggregated = aggregated_fitness(payoff, x);
          for (int i = 0; i < n; ++i) CHECK(std::abs(direct[i] - aggregated[i]) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("orthant and simplex transforms") {
    const auto x = to_simplex(std::vector<double>{1.0, 1.0});
    for (double v : x) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const auto y = to_orthant(std::vector<double>{0.5, 0.5});
    REQUIRE(y.size() == 1);
    CHECK(y[0] == 1.0);
    const auto back = to_orthant(to_simplex(std::vector<double>{0.3, 2.7}));
    CHECK(std::abs(back[0] - 0.3) < 1e-12);
    CHECK(std::abs(back[1] - 2.7) < 1e-12);

    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
      const auto p = random_simplex_point(4, rng);
      const auto q = to_simplex(to_orthant(p));
      for (int i = 0; i < 4; ++i) CHECK(std::abs(p[i] - q[i]) < 1e-12);
    }
    CHECK_THROWS_AS(to_simplex(std::vector<double>{0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(to_orthant(std::vector<double>{1.0, 0.0}), std::domain_error);
  }

  TEST_CASE("replicator residual") {
    const BetaTensor zero(3, 3, std::vector<double>(18, 0.0));
    for (double r : replicator_residual(zero, std::vector<double>{0.2, 0.3, 0.5})) CHECK(r == 0.0);

    // P(y) = y^2 - 1 has the root y = 1, i.e. x = (1/2, 1/2).
    const BetaTensor beta(2, 3, {1.0, 0.0, 0.0, -1.0});
    const auto res = replicator_residual(beta, std::vector<double>{0.5, 0.5});
    CHECK(std::abs(res[0]) < 1e-15);
    CHECK(std::abs(replicator_residual(beta, std::vector<double>{0.3, 0.7})[0]) > 1e-3);
    CHECK_THROWS(replicator_residual(beta, std::vector<double>{1.0, 0.0}));
  }

  TEST_CASE("residual vanishes at solver roots") {
    for (unsigned seed = 0; seed < 200; ++seed) {
      const int d = 2 + seed % 7;
      const BetaTensor beta(2, d, random_entries(tuple_count(2, d), seed));
      const CoefficientSystem sys = aggregate_coefficients(beta);
      const RootCountReport r = isolate_refine(to_univariate(sys), 1e-13);
      for (double y : r.roots) {
        const auto x = to_simplex(std::vector<double>{y});
        for (double v : replicator_residual(beta, x)) CHECK(std::abs(v) < 1e-8);
      }
    }
    for (unsigned seed = 0; seed < 200; ++seed) {
      const BetaTensor beta(3, 3, random_entries(2 * 9, 1000 + seed));
      const CoefficientSystem sys = aggregate_coefficients(beta);
      const RootCountReport r = count_positive_bivariate(BivariateSystem::from_system(sys));
      if (r.degenerate) continue;
      for (const auto& y : r.points) {
        for (double v : replicator_residual(sys, to_simplex(y))) CHECK(std::abs(v) < 1e-8);
      }
    }
  }

  TEST_CASE("univariate form") {
    const CoefficientSystem zero(2, 4, std::vector<double>(4, 0.0));
    const UnivariatePoly p = to_univariate(zero);
    CHECK(p.is_zero());
    CHECK(p.degenerate());
    CHECK_THROWS_AS(to_univariate(CoefficientSystem(3, 2, std::vector<double>(6, 1.0))), std::invalid_argument);
  }

  TEST_CASE("shape validation") {
    CHECK_THROWS_AS(PayoffTensor(2, 3, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(BetaTensor(1, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(BetaTensor(2, 2, {1.0, NAN}), std::invalid_argument);
    CHECK_THROWS_AS(tuple_count(2, 80), std::overflow_error);
  }
}
