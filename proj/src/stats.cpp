#include "exiso/stats.hpp"

#include <algorithm>
#include <cmath>

#include "exiso/error.hpp"

namespace exiso {

double sample_sd(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw Error("stats", "standard deviation needs at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double quantile_type7_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) throw Error("stats", "quantile of empty data");
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile_type7(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return quantile_type7_sorted(values, p);
}

}  // namespace exiso
