#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gamepoly/errors.hpp"
#include "gamepoly/statistics.hpp"

using namespace gamepoly;

namespace {

CampaignConfig config_for(int n, int d, std::uint64_t samples, std::uint64_t seed = 1) {
  CampaignConfig c;
  c.ensemble.n = n;
  c.ensemble.d = d;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("statistics") {
  TEST_CASE("closed-form references") {
    CHECK(expected_count_closed_form(5, 2) == doctest::Approx(1.0));
    CHECK(expected_count_closed_form(2, 4) == doctest::Approx(0.125));
    CHECK(expected_count_closed_form(10, 3) == doctest::Approx(2.25));
    const SymmetricReference r = symmetric_reference(5);
    CHECK(r.lower_bound == doctest::Approx(1.0));
    CHECK(r.asymptotic == doctest::Approx(std::sqrt(2.0)));
    CHECK(symmetric_reference(2).lower_bound == doctest::Approx(0.5));
  }

  TEST_CASE("histogram bounds") {
    EnsembleDescriptor e;
    e.d = 6;
    CHECK(e.max_count() == 5);
    e.n = 3;
    e.d = 3;
    CHECK(e.max_count() == 4);
    e.d = 2;
    e.n = 5;
    CHECK(e.max_count() == 1);
    e.scheme = Scheme::payoff_b;
    CHECK_FALSE(e.conforming());
    e.n = 2;
    CHECK(e.conforming());
  }

  TEST_CASE("summary moments against direct sums") {
    MonteCarloSummary s(EnsembleDescriptor{2, 6}, 4);
    const std::vector<int> values{0, 1, 1, 2, 3, 5, 1, 0, 2, 2};
    for (int v : values) s.add(v, v == 5 ? 2 : 0);
    const double n = values.size();
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0;
    for (int v : values) ss += (v - mean) * (v - mean);
    CHECK(s.mean() == doctest::Approx(mean).epsilon(1e-15));
    CHECK(s.variance() == doctest::Approx(ss / (n - 1)).epsilon(1e-15));
    CHECK(s.standard_error() == doctest::Approx(std::sqrt(ss / (n - 1) / n)));
    CHECK(s.degenerate() == 2);
    const auto pm = s.pm();
    CHECK(std::accumulate(pm.begin(), pm.end(), 0.0) == doctest::Approx(1.0));
    CHECK(pm[1] == doctest::Approx(0.3));
    CHECK(s.pm_standard_error()[1] == doctest::Approx(std::sqrt(0.3 * 0.7 / 10)));
    CHECK_THROWS_AS(s.add(6), std::out_of_range);

    MonteCarloSummary one(EnsembleDescriptor{2, 6}, 4);
    one.add(1);
    CHECK_THROWS_AS(one.variance(), std::domain_error);
  }

  TEST_CASE("merge is exact, associative and commutative") {
    const CampaignConfig c = config_for(2, 7, 3000, 11);
    const MonteCarloSummary a = run_campaign_range(c, 0, 700);
    const MonteCarloSummary b = run_campaign_range(c, 700, 1900);
    const MonteCarloSummary d = run_campaign_range(c, 1900, 3000);
    const MonteCarloSummary whole = run_campaign_range(c, 0, 3000);
    CHECK(merge(merge(a, b), d) == whole);
    CHECK(merge(a, merge(b, d)) == whole);
    CHECK(merge(b, a) == merge(a, b));
    CHECK(merge(MonteCarloSummary(), a) == a);
    CHECK(merge(a, MonteCarloSummary()) == a);

    const MonteCarloSummary other_seed = run_campaign_range(config_for(2, 7, 10, 12), 0, 10);
    CHECK_THROWS_AS(merge(a, other_seed), std::invalid_argument);
    const MonteCarloSummary other_d = run_campaign_range(config_for(2, 8, 10, 11), 0, 10);
    CHECK_THROWS_AS(merge(a, other_d), std::invalid_argument);
  }

  TEST_CASE("restore validates totals") {
    const MonteCarloSummary s = run_campaign_range(config_for(2, 5, 500), 0, 500);
    const MonteCarloSummary back =
        SummaryAccess::restore(s.ensemble(), s.seed(), s.sum(), s.sum_squares(), s.degenerate(), s.histogram());
    CHECK(back == s);
    CHECK_THROWS(SummaryAccess::restore(s.ensemble(), s.seed(), s.sum() + 1, s.sum_squares(), s.degenerate(),
                                        s.histogram()));
  }

  TEST_CASE("worker count never changes results") {
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{2, 9}, {3, 3}, {4, 2}}) {
      CampaignConfig c = config_for(n, d, 4000, 5);
      const MonteCarloSummary serial = run_campaign(c);
      c.workers = 3;
      CHECK(run_campaign(c) == serial);
      c.workers = 7;
      CHECK(run_campaign(c) == serial);
    }
  }

  TEST_CASE("campaign validation") {
    CHECK_THROWS_AS(validate_campaign(config_for(3, 4, 10)), std::invalid_argument);
    CHECK_THROWS_AS(validate_campaign(config_for(4, 3, 10)), std::invalid_argument);
    CHECK_NOTHROW(validate_campaign(config_for(6, 2, 10)));
    CampaignConfig sym = config_for(3, 2, 10);
    sym.ensemble.symmetric = true;
    CHECK_THROWS_AS(validate_campaign(sym), std::invalid_argument);
    CampaignConfig side = config_for(3, 2, 10);
    side.ensemble.side = RootSide::negative;
    CHECK_THROWS_AS(validate_campaign(side), std::invalid_argument);
  }

  TEST_CASE("root sides partition the real roots") {
    CampaignConfig c = config_for(2, 8, 300, 3);
    c.ensemble.scheme = Scheme::scaled_kss;
    for (std::uint64_t i = 0; i < c.samples; ++i) {
      c.ensemble.side = RootSide::positive;
      const auto pos = count_sample(c, i);
      c.ensemble.side = RootSide::negative;
      const auto neg = count_sample(c, i);
      c.ensemble.side = RootSide::real;
      const auto real = count_sample(c, i);
      if (pos.second || neg.second || real.second) continue;
      CHECK(real.first == pos.first + neg.first);
    }
  }

  TEST_CASE("degenerate budget is enforced") {
    // Integer-valued coefficients hit tangencies often enough to trip a zero budget.
    CampaignConfig c = config_for(3, 3, 2000, 1);
    c.ensemble.dist = Distribution::rademacher;
    c.max_degenerate_rate = 0.0;
    CHECK_THROWS_AS(run_campaign(c), DegenerateRateError);
    c.max_degenerate_rate = 1.0;
    CHECK(run_campaign(c).degenerate() > 0);
  }

  TEST_CASE("integer coefficients are counted exactly") {
    CampaignConfig c = config_for(2, 12, 3000, 4);
    c.ensemble.dist = Distribution::rademacher;
    c.max_degenerate_rate = 0.0;
    for (RootSide side : {RootSide::positive, RootSide::real}) {
      c.ensemble.side = side;
      CHECK(run_campaign(c).degenerate() == 0);
    }
    c.ensemble.symmetric = true;
    CHECK(run_campaign(c).degenerate() == 0);
  }

  TEST_CASE("variance ratio") {
    MonteCarloSummary constant(EnsembleDescriptor{2, 10}, 1);
    for (int i = 0; i < 100; ++i) constant.add(3);
    CHECK(variance_ratio(constant) == 0.0);
    MonteCarloSummary two(EnsembleDescriptor{2, 5}, 1);
    for (int i = 0; i < 50; ++i) {
      two.add(0);
      two.add(2);
    }
    // 4 Var / sqrt(4)
    CHECK(variance_ratio(two) == doctest::Approx(2.0 * two.variance()));
  }

  TEST_CASE("clt diagnostics against direct moments") {
    MonteCarloSummary s(EnsembleDescriptor{2, 17}, 1);
    std::vector<int> counts;
    for (int i = 0; i < 1200; ++i) counts.push_back((i * 7) % 5 + (i % 3 == 0 ? 2 : 0));
    for (int v : counts) s.add(v);
    // z = (2N - 4) / 2
    std::vector<double> z;
    for (int v : counts) z.push_back((2.0 * v - 4.0) / 2.0);
    const double n = z.size();
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : z) {
      const double c = v - mean;
      m2 += c * c;
      m3 += c * c * c;
      m4 += c * c * c * c;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const CltReport r = clt_diagnostics(s);
    CHECK(r.samples == 1200);
    CHECK(r.mean == doctest::Approx(mean));
    CHECK(r.skewness == doctest::Approx(m3 / std::pow(m2, 1.5)));
    CHECK(r.excess_kurtosis == doctest::Approx(m4 / (m2 * m2) - 3.0));
  }

  TEST_CASE("clt diagnostics preconditions") {
    MonteCarloSummary few(EnsembleDescriptor{2, 10}, 1);
    for (int i = 0; i < 999; ++i) few.add(i % 3);
    CHECK_THROWS_AS(clt_diagnostics(few), std::domain_error);
    MonteCarloSummary flat(EnsembleDescriptor{2, 10}, 1);
    for (int i = 0; i < 2000; ++i) flat.add(2);
    CHECK_THROWS_AS(clt_diagnostics(flat), std::domain_error);
    MonteCarloSummary multi(EnsembleDescriptor{3, 2}, 1);
    for (int i = 0; i < 2000; ++i) multi.add(i % 2);
    CHECK_THROWS_AS(clt_diagnostics(multi), std::invalid_argument);
  }

  TEST_CASE("gaussian null band") {
    const NullBand band = gaussian_null_band(2000, 400, 0.99, 3);
    CHECK(band.skewness_lower < 0.0);
    CHECK(band.skewness_upper > 0.0);
    CHECK(band.kurtosis_lower < 0.0);
    CHECK(band.kurtosis_upper > 0.0);
    // Sample skewness has standard deviation near sqrt(6 / N).
    const double sd = std::sqrt(6.0 / 2000);
    CHECK(band.skewness_upper == doctest::Approx(2.576 * sd).epsilon(0.25));
    CHECK(gaussian_null_band(2000, 400, 0.99, 3).skewness_upper == band.skewness_upper);
  }

  TEST_CASE("empirical distribution sums to one") {
    const MonteCarloSummary s = run_campaign(config_for(2, 4, 5000, 2));
    const auto pm = s.pm();
    REQUIRE(pm.size() == 4);
    CHECK(std::accumulate(pm.begin(), pm.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    double mean = 0;
    for (std::size_t m = 0; m < pm.size(); ++m) mean += m * pm[m];
    CHECK(mean == doctest::Approx(s.mean()));
  }

  TEST_CASE("side names") {
    for (auto side : {RootSide::positive, RootSide::negative, RootSide::real}) {
      CHECK(parse_root_side(to_string(side)) == side);
    }
    CHECK_THROWS_AS(parse_root_side("imaginary"), std::invalid_argument);
  }
}
