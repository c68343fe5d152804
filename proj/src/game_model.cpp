#include "gamepoly/game_model.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace gamepoly {
namespace {

constexpr double kSimplexSumTolerance = 1e-12;

void check_frequency_vector(std::span<const double> x, int n, bool interior) {
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("frequency vector has " + std::to_string(x.size()) +
                                " components, expected " + std::to_string(n));
  }
  double sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("frequency must be finite and nonnegative");
    if (interior && v <= 0.0) throw std::domain_error("frequency vector is on the simplex boundary");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    throw std::invalid_argument("frequencies must sum to 1");
  }
}

// Powers x^0..x^degree for each component.
std::vector<std::vector<double>> power_table(std::span<const double> x, int degree) {
  std::vector<std::vector<double>> table(x.size(), std::vector<double>(degree + 1, 1.0));
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (int p = 1; p <= degree; ++p) table[j][p] = table[j][p - 1] * x[j];
  }
  return table;
}

// Exponent rank of every opponent tuple.
std::vector<std::size_t> compute_tuple_class_ranks(int n, int d) {
  const ExponentLayout& layout = exponent_layout(n - 1, d - 1);
  std::vector<std::size_t> ranks(tuple_count(n, d));
  std::vector<int> counts(n - 1);
  for_each_tuple(n, d, [&](std::span<const int> tuple, std::size_t flat) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int s : tuple) {
      if (s < n - 1) ++counts[s];
    }
    ranks[flat] = layout.rank(counts);
  });
  return ranks;
}

// Shared per (n, d); samplers aggregate once per game.
const std::vector<std::size_t>& tuple_class_ranks(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<std::size_t>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_unique<std::vector<std::size_t>>(compute_tuple_class_ranks(n, d));
  return *slot;
}

// Sum of each row over composition classes: rows x layout.size().
std::vector<double> aggregate_rows(int n, int d, std::span<const double> rows, int row_count) {
  const ExponentLayout& layout = exponent_layout(n - 1, d - 1);
  const std::vector<std::size_t>& ranks = tuple_class_ranks(n, d);
  const std::size_t width = ranks.size();
  std::vector<double> out(static_cast<std::size_t>(row_count) * layout.size(), 0.0);
  for (int r = 0; r < row_count; ++r) {
    double* dst = out.data() + static_cast<std::size_t>(r) * layout.size();
    const double* src = rows.data() + static_cast<std::size_t>(r) * width;
    for (std::size_t t = 0; t < width; ++t) dst[ranks[t]] += src[t];
  }
  return out;
}

// sum_k c_k prod_j x_j^{k_j} x_last^{k_last} over the layout.
double evaluate_homogeneous(const ExponentLayout& layout, std::span<const double> coeffs,
                            std::span<const double> x) {
  const auto powers = power_table(x, layout.total_degree());
  const int m = layout.variables();
  double acc = 0.0;
  for (std::size_t r = 0; r < layout.size(); ++r) {
    const auto k = layout.index(r);
    double term = coeffs[r];
    for (int j = 0; j < m; ++j) term *= powers[j][k[j]];
    term *= powers[m][layout.implied_last(r)];
    acc += term;
  }
  return acc;
}

}  // namespace

void validate_shape(int n, int d) {
  if (n < 2) throw std::invalid_argument("strategy count n must be at least 2");
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
}

std::uint64_t tuple_count(int n, int d) {
  validate_shape(n, d);
  std::uint64_t out = 1;
  for (int i = 0; i < d - 1; ++i) {
    if (out > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(n)) {
      throw std::overflow_error("n^(d-1) opponent tuples exceed the addressable range");
    }
    out *= static_cast<std::uint64_t>(n);
  }
  return out;
}

std::uint64_t binomial_coefficient(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial requires 0 <= k <= n");
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t multinomial_coefficient(int total, std::span<const int> parts) {
  long long sum = 0;
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("multinomial parts must be nonnegative");
    sum += p;
  }
  if (sum != total) throw std::invalid_argument("multinomial parts must sum to the total");
  std::uint64_t out = 1;
  int remaining = total;
  for (int p : parts) {
    const std::uint64_t b = binomial_coefficient(remaining, p);
    if (__builtin_mul_overflow(out, b, &out)) {
      throw std::overflow_error("multinomial coefficient overflows 64 bits");
    }
    remaining -= p;
  }
  return out;
}

double binomial_real(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial requires 0 <= k <= n");
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r < 0x1p52 ? std::round(r) : r;
}

double multinomial_real(int total, std::span<const int> parts) {
  long long sum = 0;
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("multinomial parts must be nonnegative");
    sum += p;
  }
  if (sum != total) throw std::invalid_argument("multinomial parts must sum to the total");
  double out = 1.0;
  int remaining = total;
  for (int p : parts) {
    out *= binomial_real(remaining, p);
    remaining -= p;
  }
  return out;
}

void for_each_tuple(int n, int d,
                    const std::function<void(std::span<const int>, std::size_t)>& visit) {
  const std::uint64_t total = tuple_count(n, d);
  std::vector<int> tuple(d - 1, 0);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    visit(tuple, static_cast<std::size_t>(flat));
    for (int pos = d - 2; pos >= 0; --pos) {
      if (++tuple[pos] < n) break;
      tuple[pos] = 0;
    }
  }
}

std::size_t tuple_rank(int n, std::span<const int> tuple) {
  std::size_t r = 0;
  for (int s : tuple) {
    if (s < 0 || s >= n) throw std::out_of_range("strategy index out of range");
    r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(s);
  }
  return r;
}

ExponentLayout::ExponentLayout(int variables, int total_degree)
    : variables_(variables), total_degree_(total_degree) {
  if (variables < 1 || total_degree < 0) throw std::invalid_argument("invalid exponent layout");
  bounded_counts_.resize(static_cast<std::size_t>(variables + 1) * (total_degree + 1));
  for (int r = 0; r <= variables; ++r) {
    for (int s = 0; s <= total_degree; ++s) {
      bounded_counts_[static_cast<std::size_t>(r) * (total_degree + 1) + s] =
          static_cast<std::size_t>(binomial_coefficient(s + r, r));
    }
  }
  size_ = count_bounded(variables, total_degree);
  indices_.reserve(size_ * variables);
  std::vector<int> k(variables, 0);
  // Lexicographic odometer with the running-sum constraint.
  while (true) {
    indices_.insert(indices_.end(), k.begin(), k.end());
    int pos = variables - 1;
    int sum = 0;
    for (int v : k) sum += v;
    while (pos >= 0) {
      if (sum < total_degree) {
        ++k[pos];
        break;
      }
      sum -= k[pos];
      k[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::size_t ExponentLayout::count_bounded(int r, int s) const {
  if (s < 0) return 0;
  return bounded_counts_[static_cast<std::size_t>(r) * (total_degree_ + 1) + s];
}

std::size_t ExponentLayout::rank(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != variables_) throw std::invalid_argument("exponent index has wrong length");
  std::size_t r = 0;
  int prefix = 0;
  for (int j = 0; j < variables_; ++j) {
    if (k[j] < 0) throw std::invalid_argument("exponent must be nonnegative");
    for (int v = 0; v < k[j]; ++v) r += count_bounded(variables_ - 1 - j, total_degree_ - prefix - v);
    prefix += k[j];
  }
  if (prefix > total_degree_) throw std::invalid_argument("exponent index exceeds total degree");
  return r;
}

int ExponentLayout::implied_last(std::size_t rank) const {
  int sum = 0;
  for (int v : index(rank)) sum += v;
  return total_degree_ - sum;
}

const ExponentLayout& exponent_layout(int variables, int total_degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ExponentLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{variables, total_degree}];
  if (!slot) slot = std::make_unique<ExponentLayout>(variables, total_degree);
  return *slot;
}

PayoffTensor::PayoffTensor(int n, int d, std::vector<double> entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  validate_shape(n, d);
  const std::uint64_t expected = static_cast<std::uint64_t>(n) * tuple_count(n, d);
  if (entries_.size() != expected) {
    throw std::invalid_argument("payoff tensor needs " + std::to_string(expected) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw std::invalid_argument("payoff entry is not finite");
  }
}

std::span<const double> PayoffTensor::row(int focal) const {
  if (focal < 0 || focal >= n_) throw std::out_of_range("focal strategy out of range");
  const std::size_t width = entries_.size() / n_;
  return {entries_.data() + focal * width, width};
}

double PayoffTensor::at(int focal, std::span<const int> opponents) const {
  if (static_cast<int>(opponents.size()) != d_ - 1) throw std::invalid_argument("opponent tuple has wrong length");
  return row(focal)[tuple_rank(n_, opponents)];
}

BetaTensor::BetaTensor(int n, int d, std::vector<double> entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  validate_shape(n, d);
  const std::uint64_t expected = static_cast<std::uint64_t>(n - 1) * tuple_count(n, d);
  if (entries_.size() != expected) {
    throw std::invalid_argument("beta tensor needs " + std::to_string(expected) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw std::invalid_argument("beta entry is not finite");
  }
}

BetaTensor BetaTensor::from_payoff(const PayoffTensor& payoff) {
  const int n = payoff.strategies();
  const auto reference = payoff.row(n - 1);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n - 1) * reference.size());
  for (int i = 0; i < n - 1; ++i) {
    const auto focal = payoff.row(i);
    for (std::size_t t = 0; t < reference.size(); ++t) out.push_back(focal[t] - reference[t]);
  }
  return BetaTensor(n, payoff.group_size(), std::move(out));
}

std::span<const double> BetaTensor::row(int equation) const {
  if (equation < 0 || equation >= n_ - 1) throw std::out_of_range("equation index out of range");
  const std::size_t width = entries_.size() / (n_ - 1);
  return {entries_.data() + equation * width, width};
}

double BetaTensor::at(int equation, std::span<const int> opponents) const {
  if (static_cast<int>(opponents.size()) != d_ - 1) throw std::invalid_argument("opponent tuple has wrong length");
  return row(equation)[tuple_rank(n_, opponents)];
}

CoefficientSystem::CoefficientSystem(int n, int d, std::vector<double> entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
  validate_shape(n, d);
  layout_ = &exponent_layout(n - 1, d - 1);
  const std::size_t expected = static_cast<std::size_t>(n - 1) * layout_->size();
  if (entries_.size() != expected) {
    throw std::invalid_argument("coefficient system needs " + std::to_string(expected) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw std::invalid_argument("coefficient is not finite");
  }
}

std::span<const double> CoefficientSystem::equation(int i) const {
  if (i < 0 || i >= n_ - 1) throw std::out_of_range("equation index out of range");
  return {entries_.data() + i * layout_->size(), layout_->size()};
}

double CoefficientSystem::coefficient(int i, std::span<const int> k) const {
  return equation(i)[layout_->rank(k)];
}

double CoefficientSystem::evaluate(int i, std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_ - 1) throw std::invalid_argument("orthant point has wrong dimension");
  const auto coeffs = equation(i);
  const auto powers = power_table(y, d_ - 1);
  double acc = 0.0;
  for (std::size_t r = 0; r < layout_->size(); ++r) {
    const auto k = layout_->index(r);
    double term = coeffs[r];
    for (int j = 0; j < n_ - 1; ++j) term *= powers[j][k[j]];
    acc += term;
  }
  return acc;
}

CoefficientSystem aggregate_coefficients(const BetaTensor& beta) {
  const int n = beta.strategies();
  const int d = beta.group_size();
  return CoefficientSystem(n, d, aggregate_rows(n, d, beta.entries(), n - 1));
}

std::vector<double> fitness(const PayoffTensor& payoff, std::span<const double> x) {
  const int n = payoff.strategies();
  check_frequency_vector(x, n, false);
  std::vector<double> out(n, 0.0);
  for_each_tuple(n, payoff.group_size(), [&](std::span<const int> tuple, std::size_t flat) {
    double weight = 1.0;
    for (int s : tuple) weight *= x[s];
    for (int i = 0; i < n; ++i) out[i] += payoff.row(i)[flat] * weight;
  });
  return out;
}

std::vector<double> aggregated_fitness(const PayoffTensor& payoff, std::span<const double> x) {
  const int n = payoff.strategies();
  const int d = payoff.group_size();
  check_frequency_vector(x, n, false);
  const std::vector<double> classes = aggregate_rows(n, d, payoff.entries(), n);
  const ExponentLayout& layout = exponent_layout(n - 1, d - 1);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = evaluate_homogeneous(layout, std::span(classes).subspan(i * layout.size(), layout.size()), x);
  }
  return out;
}

std::vector<double> to_simplex(std::span<const double> y) {
  if (y.empty()) throw std::invalid_argument("orthant point must have at least one component");
  double total = 0.0;
  for (double v : y) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::domain_error("orthant coordinates must be positive and finite");
    total += v;
  }
  std::vector<double> x(y.size() + 1);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / (1.0 + total);
  x.back() = 1.0 / (1.0 + total);
  return x;
}

std::vector<double> to_orthant(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("simplex point must have at least two components");
  check_frequency_vector(x, static_cast<int>(x.size()), true);
  std::vector<double> y(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) y[i] = x[i] / x.back();
  return y;
}

std::vector<double> replicator_residual(const CoefficientSystem& system, std::span<const double> x) {
  const int n = system.strategies();
  check_frequency_vector(x, n, true);
  std::vector<double> out(n - 1);
  for (int i = 0; i < n - 1; ++i) out[i] = evaluate_homogeneous(system.layout(), system.equation(i), x);
  return out;
}

std::vector<double> replicator_residual(const BetaTensor& beta, std::span<const double> x) {
  return replicator_residual(aggregate_coefficients(beta), x);
}

UnivariatePoly to_univariate(const CoefficientSystem& system) {
  if (system.strategies() != 2) throw std::invalid_argument("univariate form requires a two-strategy system");
  const auto eq = system.equation(0);
  return UnivariatePoly(std::vector<double>(eq.begin(), eq.end()));
}

}  // namespace gamepoly
