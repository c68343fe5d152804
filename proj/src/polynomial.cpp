#include "gamepoly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gamepoly {

UnivariatePoly::UnivariatePoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficient is not finite");
  }
}

int UnivariatePoly::effective_degree() const {
  for (int k = degree(); k >= 0; --k) {
    if (coeffs_[k] != 0.0) return k;
  }
  return -1;
}

double UnivariatePoly::evaluate(double y) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double UnivariatePoly::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (coeffs_.size() == 1) return UnivariatePoly();
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::trimmed() const {
  const int deg = effective_degree();
  if (deg < 0) return UnivariatePoly();
  return UnivariatePoly(std::vector<double>(coeffs_.begin(), coeffs_.begin() + deg + 1));
}

UnivariatePoly UnivariatePoly::reflected() const {
  std::vector<double> out = coeffs_;
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::reversed() const {
  return UnivariatePoly(std::vector<double>(coeffs_.rbegin(), coeffs_.rend()));
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
  return a + (-1.0) * b;
}

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return UnivariatePoly(std::move(out));
}

UnivariatePoly operator*(double s, const UnivariatePoly& p) {
  std::vector<double> out(p.coefficients().begin(), p.coefficients().end());
  for (double& c : out) c *= s;
  return UnivariatePoly(std::move(out));
}

}  // namespace gamepoly
