#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exiso/isoline.hpp"
#include "exiso/sample.hpp"

namespace exiso {

// Evaluation window for the survival grid. Without explicit bounds the grid
// spans [min - h, max + 3h] per coordinate.
struct GridSpec {
  std::size_t nx = 400;
  std::size_t ny = 400;
  std::optional<double> x_min, x_max, y_min, y_max;
};

// Gridded joint survival estimate, non-increasing along both axes by
// construction of the product-Gaussian smoother.
struct SurvivalGrid {
  std::vector<double> x_coords;  // strictly increasing
  std::vector<double> y_coords;
  std::vector<double> values;  // row-major: values[ix * ny + iy]
  double h1 = 0.0;
  double h2 = 0.0;
  std::vector<std::string> warnings;

  std::size_t nx() const { return x_coords.size(); }
  std::size_t ny() const { return y_coords.size(); }
  double value(std::size_t ix, std::size_t iy) const { return values[ix * ny() + iy]; }

  double min_value() const;
  double max_value() const;

  // Bilinear interpolation inside the grid hull.
  double interpolate(double x, double y) const;
};

// Normal-reference bandwidth 4 * 1.06 * min(sd, IQR/1.34) * n^{-1/5}
// (the rule behind bandwidth.nrd). Zero spread is fatal.
double nrd_bandwidth(std::span<const double> values);

// Kernel estimate of the joint survival function on a grid:
//   value(x,y) = n^{-1} sum_t Phi((x1_t - x)/h1) * Phi((x2_t - y)/h2).
// Deterministic for any thread count. Bandwidths default to nrd per
// coordinate; grids below 16x16 are fatal; n < 50 only warns.
SurvivalGrid survival_grid(const BivariateSample& sample,
                           std::optional<std::pair<double, double>> bandwidths = {},
                           const GridSpec& grid = {}, unsigned threads = 0);

// Marching-squares level extraction at p with linear interpolation on cell
// edges, chained into a single ordered polyline. An empty level set or a
// fragmented one (several disjoint chains) is fatal; touching the grid
// boundary sets the clipped flags.
Isoline extract_isoline(const SurvivalGrid& grid, double p);

}  // namespace exiso
