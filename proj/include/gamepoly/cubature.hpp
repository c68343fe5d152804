#pragma once

// Adaptive integration over the unit hypercube [0, 1]^dim.

#include <cstddef>
#include <functional>
#include <span>

namespace gamepoly {

struct CubatureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t regions = 0;
  bool converged = false;
};

using Integrand = std::function<double(std::span<const double>)>;

// Global adaptive subdivision: Gauss-Kronrod 7/15 for dim = 1, the Genz-Malik
// degree-7 rule with its embedded degree-5 error estimate for dim >= 2.
// Regions are bisected along the axis with the largest fourth difference
// until the summed error is <= abs_tolerance or max_regions is reached.
CubatureResult adaptive_cubature(const Integrand& f, int dim, double abs_tolerance, std::size_t max_regions);

}  // namespace gamepoly
