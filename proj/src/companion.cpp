#include <Eigen/Dense>
#include <cmath>

#include "gamepoly/errors.hpp"
#include "gamepoly/polysolve.hpp"

namespace gamepoly {
namespace {

// Parlett-Reinsch balancing with power-of-two scalings; similarity
// transform, so eigenvalues are unchanged but better conditioned.
void balance(Eigen::MatrixXd& a) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double col = a.col(i).lpNorm<1>() - std::abs(a(i, i));
      const double row = a.row(i).lpNorm<1>() - std::abs(a(i, i));
      if (col == 0.0 || row == 0.0) continue;
      double g = row / kRadix;
      double f = 1.0;
      double c = col;
      const double s = col + row;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = row * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + row) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> companion_oracle(const UnivariatePoly& p) {
  const UnivariatePoly q = p.trimmed();
  if (q.is_zero()) throw DegenerateError("companion matrix of the zero polynomial");
  std::size_t low = 0;
  while (q[low] == 0.0) ++low;
  std::vector<std::complex<double>> roots(low, {0.0, 0.0});
  const int n = q.degree() - static_cast<int>(low);
  if (n == 0) return roots;

  // Frobenius companion of the monic polynomial; last column holds -c_k / c_n.
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int k = 0; k < n; ++k) c(k, n - 1) = -q[low + k] / q[low + n];
  balance(c);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  if (solver.info() != Eigen::Success) throw DegenerateError("companion eigenvalue iteration failed");
  for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

int positive_real_count(std::span<const std::complex<double>> roots, double imag_threshold) {
  int count = 0;
  for (const auto& z : roots) {
    if (z.real() > 0.0 && std::abs(z.imag()) <= imag_threshold * std::max(1.0, std::abs(z))) ++count;
  }
  return count;
}

}  // namespace gamepoly
