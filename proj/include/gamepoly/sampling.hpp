#pragma once

// Coefficient distributions, seeded per-sample streams, and the game and
// polynomial samplers for the random ensembles.

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include "gamepoly/game_model.hpp"
#include "gamepoly/polynomial.hpp"

namespace gamepoly {

// All laws are centred and symmetric. Gaussian has unit variance,
// rademacher is +-1, uniform is on [-1, 1] (variance 1/3, not rescaled:
// root counts are invariant under a common positive scale).
enum class Distribution { gaussian, rademacher, uniform };

// aggregate_a: iid payoff differences per ordered tuple, then aggregated.
// payoff_b:    iid raw payoffs, differenced against the reference strategy.
// scaled_kss:  b_k = sqrt(multinomial) * xi_k drawn directly.
enum class Scheme { aggregate_a, payoff_b, scaled_kss };

std::string_view to_string(Distribution dist);
std::string_view to_string(Scheme scheme);
Distribution parse_distribution(std::string_view name);
Scheme parse_scheme(std::string_view name);

// payoff_b keeps the independence of aggregated coefficients only for n = 2.
bool scheme_conforms(Scheme scheme, int n);

// Largest tuple count the tuple-level schemes will draw per sample.
inline constexpr std::uint64_t kMaxTupleDraws = std::uint64_t{1} << 26;

std::uint64_t splitmix64(std::uint64_t x);
// splitmix64(splitmix64(splitmix64(master) ^ index) ^ retry)
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index, std::uint64_t retry = 0);

// Deterministic random bit stream for one sample. The stream depends only on
// (master seed, sample index, retry), never on how samples are sharded.
class SeededStream {
 public:
  using result_type = std::uint64_t;

  SeededStream(std::uint64_t master_seed, std::uint64_t sample_index, std::uint64_t retry = 0)
      : engine_(substream_seed(master_seed, sample_index, retry)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

double sample_scalar(Distribution dist, SeededStream& stream);

CoefficientSystem sample_game(int n, int d, Distribution dist, Scheme scheme, SeededStream& stream);

// sqrt(C(degree, k)) * xi_k.
UnivariatePoly sample_kss_univariate(int degree, Distribution dist, SeededStream& stream);

// C(d-1, k) * xi_k, the symmetric-game polynomial.
UnivariatePoly sample_symmetric_univariate(int d, Distribution dist, SeededStream& stream);

}  // namespace gamepoly
