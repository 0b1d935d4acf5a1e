#pragma once

#include <cstddef>
#include <vector>

#include "exiso/sample.hpp"

namespace exiso {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class Provenance { base_nonparametric, projected_ad, projected_ai };

const char* to_string(Provenance p);

// Ordered polyline of equal joint-survival probability. Traversal runs with
// x strictly descending and y strictly ascending (negative slope between
// every consecutive pair).
struct Isoline {
  double level = 0.0;
  ScaleTag scale = ScaleTag::original;
  Provenance provenance = Provenance::base_nonparametric;
  std::vector<Vec2> points;
  bool clipped_start = false;  // first point lies on a grid/data boundary
  bool clipped_end = false;
  std::size_t inverse_clip_count = 0;  // vertices clipped by from_frechet

  std::size_t size() const { return points.size(); }

  // Enforces >= 2 points, no duplicates, strict negative slopes.
  void validate() const;
};

// True when every consecutive pair has strictly negative slope
// (x strictly decreasing, y strictly increasing).
bool has_strict_negative_slopes(const std::vector<Vec2>& points);

}  // namespace exiso
