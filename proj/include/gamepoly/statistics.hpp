#pragma once

// Monte Carlo campaigns over random games, closed-form references for the
// mean, variance-ratio and CLT diagnostics, and the symmetric-game bounds.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gamepoly/sampling.hpp"

namespace gamepoly {

// Which roots of a two-strategy polynomial a campaign counts. Multi-strategy
// campaigns always count positive solutions.
enum class RootSide { positive, negative, real };

std::string_view to_string(RootSide side);
RootSide parse_root_side(std::string_view name);

struct EnsembleDescriptor {
  int n = 2;
  int d = 2;
  Distribution dist = Distribution::gaussian;
  Scheme scheme = Scheme::aggregate_a;
  bool symmetric = false;
  RootSide side = RootSide::positive;

  // False for payoffB with n > 2: the resulting root law is not the one the
  // closed forms describe.
  bool conforming() const { return !symmetric ? scheme_conforms(scheme, n) : true; }
  // Largest count a single sample can produce; histogram length is this + 1.
  int max_count() const;

  friend bool operator==(const EnsembleDescriptor&, const EnsembleDescriptor&) = default;
};

// Mergeable accumulator. Counts are small integers, so totals are kept as
// exact 64-bit integers and merge is exact and associative.
class MonteCarloSummary {
 public:
  MonteCarloSummary() = default;
  MonteCarloSummary(EnsembleDescriptor ensemble, std::uint64_t seed);

  void add(int count, std::uint64_t degenerate_retries = 0);

  const EnsembleDescriptor& ensemble() const { return ensemble_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t samples() const { return samples_; }
  std::uint64_t sum() const { return sum_; }
  std::uint64_t sum_squares() const { return sum_squares_; }
  std::uint64_t degenerate() const { return degenerate_; }
  const std::vector<std::uint64_t>& histogram() const { return histogram_; }

  double mean() const;
  // Unbiased; throws std::domain_error with fewer than 2 samples.
  double variance() const;
  double standard_error() const;
  // Empirical p_m and its binomial standard error.
  std::vector<double> pm() const;
  std::vector<double> pm_standard_error() const;

  friend bool operator==(const MonteCarloSummary&, const MonteCarloSummary&) = default;

 private:
  friend MonteCarloSummary merge(const MonteCarloSummary& a, const MonteCarloSummary& b);
  friend class SummaryAccess;

  EnsembleDescriptor ensemble_;
  std::uint64_t seed_ = 0;
  std::uint64_t samples_ = 0;
  std::uint64_t sum_ = 0;
  std::uint64_t sum_squares_ = 0;
  std::uint64_t degenerate_ = 0;
  std::vector<std::uint64_t> histogram_;
};

// Throws std::invalid_argument on mismatched ensembles or seeds.
MonteCarloSummary merge(const MonteCarloSummary& a, const MonteCarloSummary& b);

// Rebuilds a summary from serialized totals; validates consistency.
class SummaryAccess {
 public:
  static MonteCarloSummary restore(EnsembleDescriptor ensemble, std::uint64_t seed, std::uint64_t sum,
                                   std::uint64_t sum_squares, std::uint64_t degenerate,
                                   std::vector<std::uint64_t> histogram);
};

struct CampaignConfig {
  EnsembleDescriptor ensemble;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double bivariate_tolerance = 1e-8;
  // Campaign aborts when degenerate redraws exceed this fraction of samples.
  double max_degenerate_rate = 1e-3;
};

// Throws std::invalid_argument outside the solvable regime:
// n = 2 (any d), d = 2 (any n), n = 3 with d <= 3, or symmetric with n = 2.
void validate_campaign(const CampaignConfig& config);

// Count for one sample index, redrawing degenerate configurations from
// substream (seed, index, retry). Returns (count, retries used).
std::pair<int, std::uint64_t> count_sample(const CampaignConfig& config, std::uint64_t index);

// Samples [begin, end) into a fresh summary; no rate check.
MonteCarloSummary run_campaign_range(const CampaignConfig& config, std::uint64_t begin, std::uint64_t end);

// Shards the index range over config.workers threads and merges. The result
// does not depend on the worker count. Throws DegenerateRateError when the
// redraw budget is exceeded.
MonteCarloSummary run_campaign(const CampaignConfig& config);

// (d-1)^((n-1)/2) / 2^(n-1).
double expected_count_closed_form(int d, int n);

struct SymmetricReference {
  double lower_bound;  // sqrt(d-1) / 2
  double asymptotic;   // sqrt((d-1) / 2)
};
SymmetricReference symmetric_reference(int d);

// 4^(n-1) Var / (d-1)^((n-1)/2).
double variance_ratio(const MonteCarloSummary& summary);

struct CltReport {
  std::uint64_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

// Moments of (2^(n-1) N - (d-1)^((n-1)/2)) / (d-1)^((n-1)/4) from the
// histogram. Requires n = 2, >= 1000 samples, and more than one occupied bin.
CltReport clt_diagnostics(const MonteCarloSummary& summary);

struct NullBand {
  double skewness_lower;
  double skewness_upper;
  double kurtosis_lower;
  double kurtosis_upper;
};

// Two-sided band at `level` for the sample skewness and excess kurtosis of
// `samples` iid Gaussian draws, from `replicates` simulated replicates.
NullBand gaussian_null_band(std::uint64_t samples, int replicates, double level, std::uint64_t seed);

}  // namespace gamepoly
