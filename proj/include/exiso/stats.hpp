#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace exiso {

// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

double sample_sd(std::span<const double> values);

// R type-7 quantile (linear interpolation of order statistics), the
// convention used by quantile() and hence by bandwidth.nrd.
double quantile_type7(std::vector<double> sorted_or_not, double p);
double quantile_type7_sorted(std::span<const double> sorted, double p);

}  // namespace exiso
