#include "exiso/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "exiso/error.hpp"
#include "exiso/stats.hpp"

namespace exiso {

double SurvivalGrid::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double SurvivalGrid::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double SurvivalGrid::interpolate(double x, double y) const {
  const auto locate = [](const std::vector<double>& coords, double v) {
    std::size_t j =
        static_cast<std::size_t>(std::upper_bound(coords.begin(), coords.end(), v) -
                                 coords.begin());
    if (j == 0) j = 1;
    if (j >= coords.size()) j = coords.size() - 1;
    return j;
  };
  const std::size_t i = locate(x_coords, x);
  const std::size_t j = locate(y_coords, y);
  const double tx = std::clamp(
      (x - x_coords[i - 1]) / (x_coords[i] - x_coords[i - 1]), 0.0, 1.0);
  const double ty = std::clamp(
      (y - y_coords[j - 1]) / (y_coords[j] - y_coords[j - 1]), 0.0, 1.0);
  const double v00 = value(i - 1, j - 1), v10 = value(i, j - 1);
  const double v01 = value(i - 1, j), v11 = value(i, j);
  return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 +
         tx * ty * v11;
}

double nrd_bandwidth(std::span<const double> values) {
  if (values.size() < 4) throw Error("surface", "bandwidth needs at least 4 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = sample_sd(values);
  const double iqr =
      quantile_type7_sorted(sorted, 0.75) - quantile_type7_sorted(sorted, 0.25);
  const double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) throw Error("surface", "zero spread: bandwidth undefined");
  return 4.0 * 1.06 * spread *
         std::pow(static_cast<double>(values.size()), -0.2);
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
  out.back() = hi;
  return out;
}

}  // namespace

SurvivalGrid survival_grid(const BivariateSample& sample,
                           std::optional<std::pair<double, double>> bandwidths,
                           const GridSpec& grid, unsigned threads) {
  const std::size_t n = sample.size();
  if (grid.nx < 16 || grid.ny < 16)
    throw Error("surface", "grid resolution below 16 is not supported");

  SurvivalGrid out;
  if (n < 50) out.warnings.push_back("fewer than 50 observations; surface will be noisy");

  if (bandwidths) {
    out.h1 = bandwidths->first;
    out.h2 = bandwidths->second;
    if (!(out.h1 > 0.0 && out.h2 > 0.0))
      throw Error("surface", "bandwidths must be positive");
  } else {
    out.h1 = nrd_bandwidth(sample.x1);
    out.h2 = nrd_bandwidth(sample.x2);
  }

  const auto range = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return std::pair<double, double>(*lo, *hi);
  };
  const auto [x_lo, x_hi] = range(sample.x1);
  const auto [y_lo, y_hi] = range(sample.x2);
  const double gx_lo = grid.x_min.value_or(x_lo - out.h1);
  const double gx_hi = grid.x_max.value_or(x_hi + 3.0 * out.h1);
  const double gy_lo = grid.y_min.value_or(y_lo - out.h2);
  const double gy_hi = grid.y_max.value_or(y_hi + 3.0 * out.h2);
  if (!(gx_lo < gx_hi && gy_lo < gy_hi))
    throw Error("surface", "grid window is empty");

  out.x_coords = linspace(gx_lo, gx_hi, grid.nx);
  out.y_coords = linspace(gy_lo, gy_hi, grid.ny);
  out.values.assign(grid.nx * grid.ny, 0.0);

  unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(grid.nx));

  // Accumulate sum_t Phi((x1_t - gx_i)/h1) * Phi((x2_t - gy_j)/h2) in
  // observation blocks. Each thread owns a contiguous band of grid rows and
  // sums observations in ascending t within it, so the result is identical
  // for any thread count.
  const std::size_t block = 512;
  std::vector<double> a(block * grid.nx), b(block * grid.ny);
  for (std::size_t t0 = 0; t0 < n; t0 += block) {
    const std::size_t m = std::min(block, n - t0);
    for (std::size_t t = 0; t < m; ++t) {
      const double x1 = sample.x1[t0 + t];
      const double x2 = sample.x2[t0 + t];
      for (std::size_t i = 0; i < grid.nx; ++i)
        a[t * grid.nx + i] = normal_cdf((x1 - out.x_coords[i]) / out.h1);
      for (std::size_t j = 0; j < grid.ny; ++j)
        b[t * grid.ny + j] = normal_cdf((x2 - out.y_coords[j]) / out.h2);
    }
    auto accumulate_rows = [&](std::size_t i_begin, std::size_t i_end) {
      for (std::size_t t = 0; t < m; ++t) {
        const double* bt = &b[t * grid.ny];
        for (std::size_t i = i_begin; i < i_end; ++i) {
          const double at = a[t * grid.nx + i];
          if (at == 0.0) continue;
          double* row = &out.values[i * grid.ny];
          for (std::size_t j = 0; j < grid.ny; ++j) row[j] += at * bt[j];
        }
      }
    };
    if (n_threads == 1) {
      accumulate_rows(0, grid.nx);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (grid.nx + n_threads - 1) / n_threads;
      for (unsigned w = 0; w < n_threads; ++w) {
        const std::size_t i_begin = w * chunk;
        const std::size_t i_end = std::min(grid.nx, i_begin + chunk);
        if (i_begin >= i_end) break;
        pool.emplace_back(accumulate_rows, i_begin, i_end);
      }
      for (auto& th : pool) th.join();
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : out.values) v *= inv_n;
  return out;
}

namespace {

// Edge identifiers for marching squares: horizontal edge (i,j) joins nodes
// (i,j)-(i+1,j); vertical edge (i,j) joins (i,j)-(i,j+1).
struct EdgeId {
  bool horizontal;
  std::size_t i, j;

  bool operator<(const EdgeId& o) const {
    if (horizontal != o.horizontal) return horizontal < o.horizontal;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
  bool operator==(const EdgeId& o) const {
    return horizontal == o.horizontal && i == o.i && j == o.j;
  }
};

struct Crossing {
  Vec2 point;
  std::vector<std::size_t> segments;  // indices of incident segments
};

}  // namespace

Isoline extract_isoline(const SurvivalGrid& grid, double p) {
  const std::size_t nx = grid.nx(), ny = grid.ny();
  const double vmin = grid.min_value(), vmax = grid.max_value();
  if (!(p > vmin && p < vmax))
    throw Error("surface", "level " + std::to_string(p) +
                               " outside the achievable grid range (" +
                               std::to_string(vmin) + ", " + std::to_string(vmax) + ")");

  const auto above = [&](std::size_t i, std::size_t j) { return grid.value(i, j) > p; };
  const auto cross_point = [&](const EdgeId& e) {
    const double va = grid.value(e.i, e.j);
    if (e.horizontal) {
      const double vb = grid.value(e.i + 1, e.j);
      const double t = (p - va) / (vb - va);
      return Vec2{grid.x_coords[e.i] + t * (grid.x_coords[e.i + 1] - grid.x_coords[e.i]),
                  grid.y_coords[e.j]};
    }
    const double vb = grid.value(e.i, e.j + 1);
    const double t = (p - va) / (vb - va);
    return Vec2{grid.x_coords[e.i],
                grid.y_coords[e.j] + t * (grid.y_coords[e.j + 1] - grid.y_coords[e.j])};
  };

  std::map<EdgeId, Crossing> crossings;
  std::vector<std::pair<EdgeId, EdgeId>> segments;

  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const bool a00 = above(i, j), a10 = above(i + 1, j);
      const bool a01 = above(i, j + 1), a11 = above(i + 1, j + 1);
      std::vector<EdgeId> crossed;
      if (a00 != a10) crossed.push_back({true, i, j});          // bottom
      if (a01 != a11) crossed.push_back({true, i, j + 1});      // top
      if (a00 != a01) crossed.push_back({false, i, j});         // left
      if (a10 != a11) crossed.push_back({false, i + 1, j});     // right
      if (crossed.empty()) continue;
      if (crossed.size() != 2)
        throw Error("surface",
                    "ambiguous level-set cell (saddle); the surface is not monotone");
      const std::size_t seg = segments.size();
      segments.emplace_back(crossed[0], crossed[1]);
      for (const EdgeId& e : crossed) {
        auto [it, inserted] = crossings.try_emplace(e);
        if (inserted) it->second.point = cross_point(e);
        it->second.segments.push_back(seg);
      }
    }
  }

  if (segments.empty())
    throw Error("surface", "level set is empty on the grid");

  const auto is_boundary = [&](const EdgeId& e) {
    if (e.horizontal) return e.j == 0 || e.j == ny - 1;
    return e.i == 0 || e.i == nx - 1;
  };

  // Chain segments into polylines by walking from degree-1 edges.
  std::vector<EdgeId> endpoints;
  for (const auto& [edge, cr] : crossings)
    if (cr.segments.size() == 1) endpoints.push_back(edge);

  if (endpoints.size() != 2)
    throw Error("surface",
                "level set is fragmented (" +
                    std::to_string(std::max<std::size_t>(1, endpoints.size() / 2)) +
                    " chains); increase the bandwidth");

  std::vector<char> used(segments.size(), 0);
  std::vector<EdgeId> path;
  EdgeId current = endpoints.front();
  path.push_back(current);
  while (true) {
    const auto& inc = crossings.at(current).segments;
    std::size_t next_seg = segments.size();
    for (std::size_t s : inc)
      if (!used[s]) {
        next_seg = s;
        break;
      }
    if (next_seg == segments.size()) break;
    used[next_seg] = 1;
    const auto& [ea, eb] = segments[next_seg];
    current = (ea == current) ? eb : ea;
    path.push_back(current);
  }
  for (char u : used)
    if (!u)
      throw Error("surface", "level set is fragmented; increase the bandwidth");

  Isoline iso;
  iso.level = p;
  iso.scale = ScaleTag::original;
  iso.provenance = Provenance::base_nonparametric;
  iso.points.reserve(path.size());
  for (const EdgeId& e : path) {
    const Vec2 pt = crossings.at(e).point;
    if (!iso.points.empty() && iso.points.back().x == pt.x && iso.points.back().y == pt.y)
      continue;
    iso.points.push_back(pt);
  }
  bool clipped_front = is_boundary(path.front());
  bool clipped_back = is_boundary(path.back());
  if (iso.points.size() < 2)
    throw Error("surface", "level set degenerated to a single point");

  // Orient with x descending (and hence y ascending).
  if (iso.points.front().x < iso.points.back().x) {
    std::reverse(iso.points.begin(), iso.points.end());
    std::swap(clipped_front, clipped_back);
  }
  iso.clipped_start = clipped_front;
  iso.clipped_end = clipped_back;
  iso.validate();
  return iso;
}

}  // namespace exiso
