#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "gamepoly/errors.hpp"
#include "gamepoly/polysolve.hpp"

namespace gamepoly {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDepth = 64;
constexpr double kMinWidth = 1e-14;

// Split ratios tried in order; the off-centre ones dodge roots sitting
// exactly on a dyadic point (y = 1 is common for +-1 coefficients).
constexpr std::array<double, 5> kSplitRatios = {0.5, 0.4609375, 0.5390625, 0.421875, 0.578125};

// Bernstein coefficients of one subinterval of (0, 1) with a per-coefficient
// bound on accumulated rounding error.
struct Piece {
  double lower;
  double upper;
  int depth;
  std::vector<double> coeffs;
  std::vector<double> error;
};

// Smallest and largest sign-variation counts over every sign assignment of
// the coefficients whose magnitude is inside their error bound.
std::pair<int, int> variation_range(const std::vector<double>& c, const std::vector<double>& e) {
  constexpr int kUnreached = 1 << 20;
  // Indexed by the sign of the last coefficient: 0 negative, 1 positive.
  std::array<int, 2> lo = {kUnreached, kUnreached};
  std::array<int, 2> hi = {-kUnreached, -kUnreached};
  bool started = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool ambiguous = std::abs(c[i]) <= e[i];
    if (c[i] == 0.0 && e[i] == 0.0) continue;  // exact zeros do not count
    const int fixed = c[i] > 0.0 ? 1 : 0;
    std::array<int, 2> nlo = {kUnreached, kUnreached};
    std::array<int, 2> nhi = {-kUnreached, -kUnreached};
    for (int s = 0; s < 2; ++s) {
      if (!ambiguous && s != fixed) continue;
      if (!started) {
        nlo[s] = 0;
        nhi[s] = 0;
        continue;
      }
      for (int prev = 0; prev < 2; ++prev) {
        if (lo[prev] == kUnreached) continue;
        const int step = prev != s ? 1 : 0;
        nlo[s] = std::min(nlo[s], lo[prev] + step);
        nhi[s] = std::max(nhi[s], hi[prev] + step);
      }
    }
    lo = nlo;
    hi = nhi;
    started = true;
  }
  if (!started) return {0, 0};
  return {std::min(lo[0], lo[1]), std::max(hi[0], hi[1])};
}

// de Casteljau split at ratio lambda; left and right receive the two halves.
void split(const Piece& piece, double lambda, Piece& left, Piece& right) {
  const std::size_t n = piece.coeffs.size();
  std::vector<double> b = piece.coeffs;
  std::vector<double> e = piece.error;
  left.coeffs.resize(n);
  left.error.resize(n);
  right.coeffs.resize(n);
  right.error.resize(n);
  const double mu = 1.0 - lambda;
  const std::size_t deg = n - 1;
  left.coeffs[0] = b[0];
  left.error[0] = e[0];
  right.coeffs[deg] = b[deg];
  right.error[deg] = e[deg];
  for (std::size_t r = 1; r <= deg; ++r) {
    for (std::size_t i = 0; i + r <= deg; ++i) {
      const double v = mu * b[i] + lambda * b[i + 1];
      e[i] = mu * e[i] + lambda * e[i + 1] + 2.0 * kEps * (mu * std::abs(b[i]) + lambda * std::abs(b[i + 1]));
      b[i] = v;
    }
    left.coeffs[r] = b[0];
    left.error[r] = e[0];
    right.coeffs[deg - r] = b[deg - r];
    right.error[deg - r] = e[deg - r];
  }
  const double mid = piece.lower + lambda * (piece.upper - piece.lower);
  left.lower = piece.lower;
  left.upper = mid;
  right.lower = mid;
  right.upper = piece.upper;
  left.depth = right.depth = piece.depth + 1;
}

double t_to_y(double t) {
  if (t >= 1.0) return std::numeric_limits<double>::infinity();
  return t / (1.0 - t);
}

}  // namespace

RootCountReport subdivision_count_positive(const UnivariatePoly& p) {
  const UnivariatePoly q = p.trimmed();
  if (q.is_zero()) throw DegenerateError("root count of the zero polynomial");
  // Dividing out y^j leaves the positive roots unchanged.
  std::size_t low = 0;
  while (q[low] == 0.0) ++low;
  const int deg = q.degree() - static_cast<int>(low);
  RootCountReport report;
  if (deg == 0) return report;

  // p(t / (1 - t)) (1 - t)^deg = sum_k b_k t^k (1 - t)^(deg - k), so the
  // Bernstein coefficients are b_k / C(deg, k).
  Piece root{0.0, 1.0, 0, std::vector<double>(deg + 1), std::vector<double>(deg + 1)};
  for (int k = 0; k <= deg; ++k) {
    root.coeffs[k] = q[low + k] / binomial_real(deg, k);
    root.error[k] = (deg + 2) * kEps * std::abs(root.coeffs[k]);
  }

  std::vector<Piece> stack;
  stack.push_back(std::move(root));
  std::vector<Interval> found;
  Piece left, right;
  while (!stack.empty()) {
    Piece piece = std::move(stack.back());
    stack.pop_back();
    const auto [vmin, vmax] = variation_range(piece.coeffs, piece.error);
    if (vmax == 0) continue;
    if (vmin == 1 && vmax == 1) {
      found.push_back({piece.lower, piece.upper});
      continue;
    }
    if (piece.depth >= kMaxDepth || piece.upper - piece.lower < kMinWidth) {
      report.degenerate = true;
      continue;
    }
    bool split_ok = false;
    for (double lambda : kSplitRatios) {
      split(piece, lambda, left, right);
      // The shared coefficient is the value at the split point.
      if (std::abs(left.coeffs.back()) > left.error.back()) {
        split_ok = true;
        break;
      }
    }
    if (!split_ok) {
      report.degenerate = true;
      continue;
    }
    // Right first so the left half is processed next and roots come out sorted.
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }

  std::sort(found.begin(), found.end(), [](const Interval& a, const Interval& b) { return a.lower < b.lower; });
  report.count = static_cast<int>(found.size());
  for (const Interval& t : found) report.intervals.push_back({t_to_y(t.lower), t_to_y(t.upper)});
  return report;
}

}  // namespace gamepoly
