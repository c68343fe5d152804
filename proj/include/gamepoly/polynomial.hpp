#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gamepoly {

// Dense real polynomial b_0 + b_1 y + ... + b_n y^n, lowest degree first.
//
// The nominal degree is fixed by the coefficient count. A zero leading
// coefficient is kept as-is and reported through degenerate(); callers that
// want the effective degree call trimmed().
class UnivariatePoly {
 public:
  UnivariatePoly() : coeffs_{0.0} {}
  explicit UnivariatePoly(std::vector<double> coeffs);

  std::span<const double> coefficients() const { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  std::size_t size() const { return coeffs_.size(); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Index of the highest nonzero coefficient, -1 for the zero polynomial.
  int effective_degree() const;
  double leading() const { return coeffs_.back(); }

  bool is_zero() const { return effective_degree() < 0; }
  bool degenerate() const { return coeffs_.back() == 0.0; }

  double evaluate(double y) const;
  double max_abs_coefficient() const;

  UnivariatePoly derivative() const;
  UnivariatePoly trimmed() const;
  // p(-y).
  UnivariatePoly reflected() const;
  // y^n p(1/y).
  UnivariatePoly reversed() const;

  friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;

 private:
  std::vector<double> coeffs_;
};

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly operator*(double s, const UnivariatePoly& p);

}  // namespace gamepoly
