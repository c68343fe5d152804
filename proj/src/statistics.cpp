#include "gamepoly/statistics.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "gamepoly/errors.hpp"
#include "gamepoly/polysolve.hpp"

namespace gamepoly {
namespace {

constexpr std::uint64_t kMaxRetries = 16;
constexpr std::uint64_t kMinCltSamples = 1000;

// Integer-valued coefficients (discrete laws) can carry repeated roots with
// positive probability; those polynomials are counted exactly.
std::optional<std::vector<std::int64_t>> integer_coefficients(const UnivariatePoly& p) {
  constexpr double kExactLimit = 9007199254740992.0;  // 2^53
  std::vector<std::int64_t> out;
  for (double c : p.coefficients()) {
    if (std::trunc(c) != c || std::abs(c) > kExactLimit) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(c));
  }
  return out;
}

int count_univariate(const UnivariatePoly& p, RootSide side, bool& degenerate) {
  const UnivariatePoly q = p.trimmed();
  if (q.is_zero()) {
    degenerate = true;
    return 0;
  }
  if (auto exact = integer_coefficients(q)) {
    int count = 0;
    if (side != RootSide::negative) count += exact_sturm_count_positive(*exact);
    if (side != RootSide::positive) {
      for (std::size_t k = 1; k < exact->size(); k += 2) (*exact)[k] = -(*exact)[k];
      count += exact_sturm_count_positive(*exact);
    }
    if (side == RootSide::real && q[0] == 0.0) ++count;
    return count;
  }
  int count = 0;
  if (side != RootSide::negative) {
    const RootCountReport r = count_positive(q);
    degenerate = degenerate || r.degenerate;
    count += r.count;
  }
  if (side != RootSide::positive) {
    const RootCountReport r = count_positive(q.reflected());
    degenerate = degenerate || r.degenerate;
    count += r.count;
  }
  if (side == RootSide::real && q[0] == 0.0) ++count;
  return count;
}

// Central moments of the values weighted by the histogram.
struct Moments {
  long double mean = 0;
  long double m2 = 0;
  long double m3 = 0;
  long double m4 = 0;
};

template <typename Value>
Moments central_moments(const std::vector<std::uint64_t>& weights, Value value, std::uint64_t total) {
  Moments m;
  for (std::size_t i = 0; i < weights.size(); ++i) m.mean += weights[i] * value(i);
  m.mean /= total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const long double dv = value(i) - m.mean;
    m.m2 += weights[i] * dv * dv;
    m.m3 += weights[i] * dv * dv * dv;
    m.m4 += weights[i] * dv * dv * dv * dv;
  }
  m.m2 /= total;
  m.m3 /= total;
  m.m4 /= total;
  return m;
}

double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

}  // namespace

std::string_view to_string(RootSide side) {
  switch (side) {
    case RootSide::positive: return "positive";
    case RootSide::negative: return "negative";
    case RootSide::real: return "real";
  }
  return "unknown";
}

RootSide parse_root_side(std::string_view name) {
  if (name == "positive") return RootSide::positive;
  if (name == "negative") return RootSide::negative;
  if (name == "real") return RootSide::real;
  throw std::invalid_argument("unknown root side '" + std::string(name) + "'");
}

int EnsembleDescriptor::max_count() const {
  if (n == 2 || symmetric) return d - 1;
  if (d == 2) return 1;
  // Bezout bound for n - 1 equations of degree d - 1.
  return static_cast<int>(std::lround(std::pow(d - 1, n - 1)));
}

MonteCarloSummary::MonteCarloSummary(EnsembleDescriptor ensemble, std::uint64_t seed)
    : ensemble_(ensemble), seed_(seed), histogram_(ensemble.max_count() + 1, 0) {}

void MonteCarloSummary::add(int count, std::uint64_t degenerate_retries) {
  if (count < 0 || static_cast<std::size_t>(count) >= histogram_.size()) {
    throw std::out_of_range("count " + std::to_string(count) + " outside the histogram range");
  }
  ++samples_;
  sum_ += count;
  sum_squares_ += static_cast<std::uint64_t>(count) * count;
  degenerate_ += degenerate_retries;
  ++histogram_[count];
}

double MonteCarloSummary::mean() const {
  if (samples_ == 0) throw std::domain_error("mean of an empty summary");
  return static_cast<double>(sum_) / samples_;
}

double MonteCarloSummary::variance() const {
  if (samples_ < 2) throw std::domain_error("variance needs at least 2 samples");
  // Exact integer numerator: n * sum(x^2) - (sum x)^2.
  const unsigned __int128 n = samples_;
  const unsigned __int128 num = n * sum_squares_ - static_cast<unsigned __int128>(sum_) * sum_;
  return static_cast<double>(static_cast<long double>(num) / (static_cast<long double>(samples_) * (samples_ - 1)));
}

double MonteCarloSummary::standard_error() const { return std::sqrt(variance() / samples_); }

std::vector<double> MonteCarloSummary::pm() const {
  if (samples_ == 0) throw std::domain_error("p_m of an empty summary");
  std::vector<double> out;
  for (std::uint64_t h : histogram_) out.push_back(static_cast<double>(h) / samples_);
  return out;
}

std::vector<double> MonteCarloSummary::pm_standard_error() const {
  std::vector<double> out;
  for (double p : pm()) out.push_back(std::sqrt(p * (1.0 - p) / samples_));
  return out;
}

MonteCarloSummary merge(const MonteCarloSummary& a, const MonteCarloSummary& b) {
  if (b.samples_ == 0 && b.degenerate_ == 0) return a;
  if (a.samples_ == 0 && a.degenerate_ == 0) return b;
  if (!(a.ensemble_ == b.ensemble_)) throw std::invalid_argument("cannot merge summaries of different ensembles");
  if (a.seed_ != b.seed_) throw std::invalid_argument("cannot merge summaries with different master seeds");
  MonteCarloSummary out = a;
  out.samples_ += b.samples_;
  out.sum_ += b.sum_;
  out.sum_squares_ += b.sum_squares_;
  out.degenerate_ += b.degenerate_;
  for (std::size_t i = 0; i < out.histogram_.size(); ++i) out.histogram_[i] += b.histogram_[i];
  return out;
}

MonteCarloSummary SummaryAccess::restore(EnsembleDescriptor ensemble, std::uint64_t seed, std::uint64_t sum,
                                         std::uint64_t sum_squares, std::uint64_t degenerate,
                                         std::vector<std::uint64_t> histogram) {
  MonteCarloSummary s(ensemble, seed);
  if (histogram.size() != s.histogram_.size()) throw std::invalid_argument("histogram length does not match ensemble");
  std::uint64_t samples = 0;
  std::uint64_t check_sum = 0;
  std::uint64_t check_squares = 0;
  for (std::size_t m = 0; m < histogram.size(); ++m) {
    samples += histogram[m];
    check_sum += histogram[m] * m;
    check_squares += histogram[m] * m * m;
  }
  if (check_sum != sum || check_squares != sum_squares) {
    throw std::invalid_argument("summary totals disagree with the histogram");
  }
  s.samples_ = samples;
  s.sum_ = sum;
  s.sum_squares_ = sum_squares;
  s.degenerate_ = degenerate;
  s.histogram_ = std::move(histogram);
  return s;
}

void validate_campaign(const CampaignConfig& config) {
  const EnsembleDescriptor& e = config.ensemble;
  validate_shape(e.n, e.d);
  if (config.samples < 1) throw std::invalid_argument("campaign needs at least one sample");
  if (config.workers < 1) throw std::invalid_argument("campaign needs at least one worker");
  if (e.symmetric && e.n != 2) throw std::invalid_argument("symmetric campaigns need n = 2");
  if (e.n != 2 && e.side != RootSide::positive) {
    throw std::invalid_argument("negative/real root counts are defined for n = 2 only");
  }
  const bool solvable = e.n == 2 || e.d == 2 || (e.n == 3 && e.d <= 3);
  if (!solvable) {
    throw std::invalid_argument("(n=" + std::to_string(e.n) + ", d=" + std::to_string(e.d) +
                                ") is outside the solvable regime: n = 2, d = 2, or n = 3 with d <= 3");
  }
  if (!(config.bivariate_tolerance > 0.0)) throw std::invalid_argument("bivariate tolerance must be positive");
}

std::pair<int, std::uint64_t> count_sample(const CampaignConfig& config, std::uint64_t index) {
  const EnsembleDescriptor& e = config.ensemble;
  for (std::uint64_t retry = 0; retry <= kMaxRetries; ++retry) {
    SeededStream stream(config.seed, index, retry);
    bool degenerate = false;
    int count = 0;
    try {
      if (e.symmetric) {
        count = count_univariate(sample_symmetric_univariate(e.d, e.dist, stream), e.side, degenerate);
      } else {
        const CoefficientSystem system = sample_game(e.n, e.d, e.dist, e.scheme, stream);
        if (e.n == 2) {
          count = count_univariate(to_univariate(system), e.side, degenerate);
        } else if (e.d == 2) {
          const RootCountReport r = solve_linear(system);
          degenerate = r.degenerate;
          count = r.count;
        } else {
          const RootCountReport r =
              count_positive_bivariate(BivariateSystem::from_system(system), config.bivariate_tolerance);
          degenerate = r.degenerate;
          count = r.count;
        }
      }
    } catch (const DegenerateError&) {
      degenerate = true;
    } catch (const ConvergenceError&) {
      degenerate = true;
    }
    if (!degenerate) return {count, retry};
  }
  throw DegenerateRateError("sample " + std::to_string(index) + " stayed degenerate after " +
                            std::to_string(kMaxRetries) + " redraws");
}

MonteCarloSummary run_campaign_range(const CampaignConfig& config, std::uint64_t begin, std::uint64_t end) {
  validate_campaign(config);
  MonteCarloSummary summary(config.ensemble, config.seed);
  for (std::uint64_t i = begin; i < end; ++i) {
    const auto [count, retries] = count_sample(config, i);
    summary.add(count, retries);
  }
  return summary;
}

MonteCarloSummary run_campaign(const CampaignConfig& config) {
  validate_campaign(config);
  const std::uint64_t workers = std::min<std::uint64_t>(config.workers, config.samples);
  std::vector<MonteCarloSummary> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = config.samples / workers;
  const std::uint64_t extra = config.samples % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    auto job = [&, w, begin, end] {
      try {
        parts[w] = run_campaign_range(config, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (workers == 1) {
      job();
    } else {
      threads.emplace_back(job);
    }
    begin = end;
  }
  for (std::thread& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  // Merge in shard order; integer totals make the order irrelevant anyway.
  MonteCarloSummary total(config.ensemble, config.seed);
  for (const MonteCarloSummary& p : parts) total = merge(total, p);

  const double rate = static_cast<double>(total.degenerate()) / total.samples();
  if (rate > config.max_degenerate_rate) {
    throw DegenerateRateError("degenerate redraw rate " + std::to_string(rate) + " exceeds budget " +
                              std::to_string(config.max_degenerate_rate));
  }
  return total;
}

double expected_count_closed_form(int d, int n) {
  validate_shape(n, d);
  return std::pow(d - 1.0, (n - 1) / 2.0) / std::pow(2.0, n - 1);
}

SymmetricReference symmetric_reference(int d) {
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  return {std::sqrt(d - 1.0) / 2.0, std::sqrt((d - 1.0) / 2.0)};
}

double variance_ratio(const MonteCarloSummary& summary) {
  const EnsembleDescriptor& e = summary.ensemble();
  return std::pow(4.0, e.n - 1) * summary.variance() / std::pow(e.d - 1.0, (e.n - 1) / 2.0);
}

CltReport clt_diagnostics(const MonteCarloSummary& summary) {
  const EnsembleDescriptor& e = summary.ensemble();
  if (e.n != 2) throw std::invalid_argument("CLT diagnostics are defined for n = 2");
  if (summary.samples() < kMinCltSamples) {
    throw std::domain_error("CLT diagnostics need at least " + std::to_string(kMinCltSamples) + " samples");
  }
  const auto& h = summary.histogram();
  if (std::count_if(h.begin(), h.end(), [](std::uint64_t c) { return c > 0; }) < 2) {
    throw std::domain_error("moments undefined for a single-bin histogram");
  }
  const long double centre = std::pow(static_cast<long double>(e.d - 1), (e.n - 1) / 2.0L);
  const long double scale = std::pow(static_cast<long double>(e.d - 1), (e.n - 1) / 4.0L);
  const long double weight = std::pow(2.0L, e.n - 1);
  const Moments m =
      central_moments(h, [&](std::size_t count) { return (weight * count - centre) / scale; }, summary.samples());
  CltReport r;
  r.samples = summary.samples();
  r.mean = static_cast<double>(m.mean);
  r.variance = static_cast<double>(m.m2);
  r.skewness = static_cast<double>(m.m3 / std::pow(m.m2, 1.5L));
  r.excess_kurtosis = static_cast<double>(m.m4 / (m.m2 * m.m2) - 3.0L);
  return r;
}

NullBand gaussian_null_band(std::uint64_t samples, int replicates, double level, std::uint64_t seed) {
  if (samples < 4 || replicates < 10) throw std::invalid_argument("null band needs >= 4 samples and >= 10 replicates");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("null band level must lie in (0, 1)");
  std::vector<double> skews;
  std::vector<double> kurts;
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < replicates; ++r) {
    SeededStream stream(seed, static_cast<std::uint64_t>(r));
    long double s1 = 0;
    std::vector<double> draws(samples);
    for (double& x : draws) {
      x = normal(stream);
      s1 += x;
    }
    const long double mean = s1 / samples;
    long double m2 = 0, m3 = 0, m4 = 0;
    for (double x : draws) {
      const long double dv = x - mean;
      m2 += dv * dv;
      m3 += dv * dv * dv;
      m4 += dv * dv * dv * dv;
    }
    m2 /= samples;
    m3 /= samples;
    m4 /= samples;
    skews.push_back(static_cast<double>(m3 / std::pow(m2, 1.5L)));
    kurts.push_back(static_cast<double>(m4 / (m2 * m2) - 3.0L));
  }
  const double lo = (1.0 - level) / 2.0;
  const double hi = 1.0 - lo;
  return {quantile(skews, lo), quantile(skews, hi), quantile(kurts, lo), quantile(kurts, hi)};
}

}  // namespace gamepoly
