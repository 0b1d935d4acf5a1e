#include "exiso/isoline.hpp"

#include "exiso/error.hpp"

namespace exiso {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::base_nonparametric: return "base_nonparametric";
    case Provenance::projected_ad: return "projected_ad";
    case Provenance::projected_ai: return "projected_ai";
  }
  return "?";
}

bool has_strict_negative_slopes(const std::vector<Vec2>& points) {
  for (std::size_t k = 1; k < points.size(); ++k)
    if (!(points[k].x < points[k - 1].x && points[k].y > points[k - 1].y)) return false;
  return true;
}

void Isoline::validate() const {
  if (points.size() < 2) throw Error("isoline", "isoline needs at least 2 points");
  if (!(level > 0.0 && level < 1.0)) throw Error("isoline", "level must lie in (0,1)");
  if (!has_strict_negative_slopes(points))
    throw Error("isoline", "isoline violates the strict negative-slope requirement");
}

}  // namespace exiso
