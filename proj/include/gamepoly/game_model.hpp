#pragma once

// Payoff tensors of d-player n-strategy games and the deterministic pipeline
// payoff -> payoff differences -> aggregated coefficients -> polynomial system
// whose positive roots are the internal equilibria.
//
// Strategies are numbered 0..n-1 in this API; strategy n-1 is the reference
// strategy whose payoff is subtracted. Opponent tuples (i_1..i_{d-1}) are
// enumerated lexicographically with i_1 most significant, which fixes the
// flat layout of every tensor.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gamepoly/polynomial.hpp"

namespace gamepoly {

// Throws std::invalid_argument unless n >= 2 and d >= 2.
void validate_shape(int n, int d);

// n^(d-1); throws std::overflow_error past 2^62.
std::uint64_t tuple_count(int n, int d);

// Exact total! / (parts_0! ... parts_k!). Throws std::invalid_argument when
// a part is negative or the parts do not sum to total, and
// std::overflow_error when the value does not fit in 64 bits.
std::uint64_t multinomial_coefficient(int total, std::span<const int> parts);
std::uint64_t binomial_coefficient(int n, int k);

// Floating-point versions for degrees past the exact 64-bit range.
double binomial_real(int n, int k);
double multinomial_real(int total, std::span<const int> parts);

// Visits every ordered opponent tuple in lexicographic order together with
// its flat rank.
void for_each_tuple(int n, int d,
                    const std::function<void(std::span<const int>, std::size_t)>& visit);

// Dense layout of all exponent multi-indices (k_1..k_m) with |k| <= D,
// ordered lexicographically. The implied last component is D - |k|.
class ExponentLayout {
 public:
  ExponentLayout(int variables, int total_degree);

  int variables() const { return variables_; }
  int total_degree() const { return total_degree_; }
  std::size_t size() const { return size_; }

  std::size_t rank(std::span<const int> k) const;
  std::span<const int> index(std::size_t rank) const {
    return {indices_.data() + rank * variables_, static_cast<std::size_t>(variables_)};
  }
  int implied_last(std::size_t rank) const;

 private:
  // Number of r-tuples with sum <= s.
  std::size_t count_bounded(int r, int s) const;

  int variables_;
  int total_degree_;
  std::size_t size_;
  std::vector<int> indices_;
  std::vector<std::size_t> bounded_counts_;
};

// Shared immutable layout for (variables, total_degree); thread-safe.
const ExponentLayout& exponent_layout(int variables, int total_degree);

class PayoffTensor {
 public:
  // entries: n blocks of n^(d-1) payoffs, block i holds the focal strategy i.
  PayoffTensor(int n, int d, std::vector<double> entries);

  int strategies() const { return n_; }
  int group_size() const { return d_; }
  std::span<const double> entries() const { return entries_; }
  std::span<const double> row(int focal) const;
  double at(int focal, std::span<const int> opponents) const;

 private:
  int n_;
  int d_;
  std::vector<double> entries_;
};

// beta^i_{tuple} = alpha^i_{tuple} - alpha^{n-1}_{tuple} for i = 0..n-2.
class BetaTensor {
 public:
  BetaTensor(int n, int d, std::vector<double> entries);
  static BetaTensor from_payoff(const PayoffTensor& payoff);

  int strategies() const { return n_; }
  int group_size() const { return d_; }
  std::span<const double> entries() const { return entries_; }
  std::span<const double> row(int equation) const;
  double at(int equation, std::span<const int> opponents) const;

 private:
  int n_;
  int d_;
  std::vector<double> entries_;
};

// The n-1 polynomials in y_1..y_{n-1} (orthant coordinates) with one
// coefficient per exponent index, stored equation-major in layout order.
class CoefficientSystem {
 public:
  CoefficientSystem(int n, int d, std::vector<double> entries);

  int strategies() const { return n_; }
  int group_size() const { return d_; }
  int equations() const { return n_ - 1; }
  const ExponentLayout& layout() const { return *layout_; }
  std::span<const double> entries() const { return entries_; }
  std::span<const double> equation(int i) const;
  double coefficient(int i, std::span<const int> k) const;

  // Value of equation i at the orthant point y (length n-1).
  double evaluate(int i, std::span<const double> y) const;

  friend bool operator==(const CoefficientSystem& a, const CoefficientSystem& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.entries_ == b.entries_;
  }

 private:
  int n_;
  int d_;
  const ExponentLayout* layout_;
  std::vector<double> entries_;
};

std::size_t tuple_rank(int n, std::span<const int> tuple);

// Sums beta over each composition class; the class of exponent k has
// multinomial(d-1; k, d-1-|k|) members.
CoefficientSystem aggregate_coefficients(const BetaTensor& beta);

// Fitness of every strategy by direct summation over all opponent tuples.
std::vector<double> fitness(const PayoffTensor& payoff, std::span<const double> x);

// Same quantity through the composition-class aggregated polynomial.
std::vector<double> aggregated_fitness(const PayoffTensor& payoff, std::span<const double> x);

// x_i = y_i / (1 + sum y), x_n = 1 / (1 + sum y). Requires y_i > 0.
std::vector<double> to_simplex(std::span<const double> y);
// y_i = x_i / x_n. Requires an interior simplex point.
std::vector<double> to_orthant(std::span<const double> x);

// (pi_i - pi_n)_{i<n} through the aggregated polynomials, at interior x.
std::vector<double> replicator_residual(const BetaTensor& beta, std::span<const double> x);
std::vector<double> replicator_residual(const CoefficientSystem& system, std::span<const double> x);

// Dense b_0..b_{d-1} of a two-strategy system.
UnivariatePoly to_univariate(const CoefficientSystem& system);

}  // namespace gamepoly
