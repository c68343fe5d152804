#include "gamepoly/cubature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace gamepoly {
namespace {

struct Region {
  std::vector<double> centre;
  std::vector<double> half_width;
  double value = 0.0;
  double error = 0.0;
  int split_axis = 0;

  bool operator<(const Region& other) const { return error < other.error; }
};

// Fully symmetric degree-7 rule with embedded degree-5 rule on [-1, 1]^n.
class GenzMalik {
 public:
  explicit GenzMalik(int n) : n_(n) {
    const double nn = n;
    w7_ = {(12824.0 - 9120.0 * nn + 400.0 * nn * nn) / 19683.0, 980.0 / 6561.0, (1820.0 - 400.0 * nn) / 19683.0,
           200.0 / 19683.0, 6859.0 / 19683.0 / std::ldexp(1.0, n)};
    w5_ = {(729.0 - 950.0 * nn + 50.0 * nn * nn) / 729.0, 245.0 / 486.0, (265.0 - 100.0 * nn) / 1458.0, 25.0 / 729.0};
  }

  std::size_t points() const { return 1 + 4 * n_ + 2 * n_ * (n_ - 1) + (std::size_t{1} << n_); }

  void apply(const Integrand& f, Region& region) const {
    static const double l2 = std::sqrt(9.0 / 70.0);
    static const double l3 = std::sqrt(9.0 / 10.0);
    static const double l4 = std::sqrt(9.0 / 10.0);
    static const double l5 = std::sqrt(9.0 / 19.0);
    const auto& c = region.centre;
    const auto& h = region.half_width;
    std::vector<double> x = c;

    const double f1 = f(x);
    double sum2 = 0.0, sum3 = 0.0, sum4 = 0.0, sum5 = 0.0;
    double best_diff = -1.0;
    int best_axis = 0;
    for (int i = 0; i < n_; ++i) {
      x[i] = c[i] + l2 * h[i];
      const double a2 = f(x);
      x[i] = c[i] - l2 * h[i];
      const double b2 = f(x);
      x[i] = c[i] + l3 * h[i];
      const double a3 = f(x);
      x[i] = c[i] - l3 * h[i];
      const double b3 = f(x);
      x[i] = c[i];
      sum2 += a2 + b2;
      sum3 += a3 + b3;
      const double diff = std::abs(a2 + b2 - 2.0 * f1 - (l2 * l2 / (l3 * l3)) * (a3 + b3 - 2.0 * f1));
      // Ties prefer the wider axis so thin slabs do not keep shrinking.
      if (diff > best_diff * (1.0 + 1e-12) || (std::abs(diff - best_diff) <= 1e-12 * diff && h[i] > h[best_axis])) {
        best_diff = diff;
        best_axis = i;
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        for (int si = -1; si <= 1; si += 2) {
          for (int sj = -1; sj <= 1; sj += 2) {
            x[i] = c[i] + si * l4 * h[i];
            x[j] = c[j] + sj * l4 * h[j];
            sum4 += f(x);
          }
        }
        x[i] = c[i];
        x[j] = c[j];
      }
    }
    for (std::size_t corner = 0; corner < (std::size_t{1} << n_); ++corner) {
      for (int i = 0; i < n_; ++i) x[i] = c[i] + ((corner >> i) & 1 ? l5 : -l5) * h[i];
      sum5 += f(x);
    }

    double volume = 1.0;
    for (double hw : h) volume *= 2.0 * hw;
    const double r7 = volume * (w7_[0] * f1 + w7_[1] * sum2 + w7_[2] * sum3 + w7_[3] * sum4 + w7_[4] * sum5);
    const double r5 = volume * (w5_[0] * f1 + w5_[1] * sum2 + w5_[2] * sum3 + w5_[3] * sum4);
    region.value = r7;
    region.error = std::abs(r7 - r5);
    region.split_axis = best_axis;
  }

 private:
  int n_;
  std::vector<double> w7_;
  std::vector<double> w5_;
};

void apply_kronrod(const Integrand& f, Region& region) {
  const double a = region.centre[0] - region.half_width[0];
  const double b = region.centre[0] + region.half_width[0];
  double error = 0.0;
  double x[1];
  auto g = [&](double t) {
    x[0] = t;
    return f(std::span<const double>(x, 1));
  };
  region.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, a, b, 0, 0.0, &error);
  region.error = error;
  region.split_axis = 0;
}

}  // namespace

CubatureResult adaptive_cubature(const Integrand& f, int dim, double abs_tolerance, std::size_t max_regions) {
  if (dim < 1) throw std::invalid_argument("cubature dimension must be at least 1");
  if (!(abs_tolerance > 0.0)) throw std::invalid_argument("cubature tolerance must be positive");
  if (max_regions < 1) throw std::invalid_argument("cubature needs at least one region");

  const GenzMalik rule(dim >= 2 ? dim : 2);
  const std::size_t per_region = dim == 1 ? 15 : rule.points();
  auto integrate = [&](Region& r) {
    if (dim == 1) {
      apply_kronrod(f, r);
    } else {
      rule.apply(f, r);
    }
  };

  CubatureResult result;
  std::priority_queue<Region> queue;
  Region whole{std::vector<double>(dim, 0.5), std::vector<double>(dim, 0.5)};
  integrate(whole);
  result.evaluations += per_region;
  double value = whole.value;
  double error = whole.error;
  queue.push(std::move(whole));

  while (error > abs_tolerance && queue.size() < max_regions) {
    Region worst = queue.top();
    queue.pop();
    value -= worst.value;
    error -= worst.error;
    const int axis = worst.split_axis;
    Region left = worst;
    Region right = worst;
    left.half_width[axis] *= 0.5;
    right.half_width[axis] *= 0.5;
    left.centre[axis] -= left.half_width[axis];
    right.centre[axis] += right.half_width[axis];
    integrate(left);
    integrate(right);
    result.evaluations += 2 * per_region;
    value += left.value + right.value;
    error += left.error + right.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
  }

  // Re-sum from the regions to shed drift from the running updates.
  value = 0.0;
  error = 0.0;
  result.regions = queue.size();
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  result.value = value;
  result.error = error;
  result.converged = error <= abs_tolerance;
  return result;
}

}  // namespace gamepoly
