#include "exiso/project.hpp"

#include <cmath>

#include "exiso/error.hpp"

namespace exiso {

const char* to_string(DependenceMode mode) {
  return mode == DependenceMode::ad ? "ad" : "ai";
}

ScalingExponents smoothed_exponents(const Vec2& z_base, double eta_hat, double beta) {
  if (!(beta > 0.0)) throw Error("project", "beta must be positive");
  if (!(eta_hat > 0.0 && eta_hat <= 1.0))
    throw Error("project", "eta_hat must lie in (0,1]");
  if (z_base.x < 0.0 || z_base.y < 0.0)
    throw Error("project", "frechet-scale point has a negative coordinate");
  const double total = z_base.x + z_base.y;
  if (!(total > 0.0)) throw Error("project", "point at the origin cannot be scaled");

  ScalingExponents e;
  e.m1 = 1.0 - std::pow(z_base.x / total, beta);
  e.m2 = 1.0 - std::pow(z_base.y / total, beta);
  e.eta1 = e.m1 * eta_hat + (1.0 - e.m1);
  e.eta2 = e.m2 * eta_hat + (1.0 - e.m2);
  return e;
}

namespace {

// s^eta with the eta == 1 case kept bit-exact, so that the ai scaling
// collapses to the ad scaling identically when eta_hat = 1 or on the axes.
inline double power_scale(double s, double eta) {
  if (eta == 1.0) return s;
  return std::pow(s, eta);
}

}  // namespace

Isoline scale_ad(const Isoline& isoline, double s) {
  if (isoline.scale != ScaleTag::frechet)
    throw Error("project", "scaling requires a frechet-scale isoline");
  if (!(s > 1.0)) throw Error("project", "scaling factor must exceed 1");

  Isoline out = isoline;
  out.level = isoline.level / s;
  out.provenance = Provenance::projected_ad;
  for (Vec2& p : out.points) {
    p.x *= s;
    p.y *= s;
  }
  return out;
}

Isoline scale_ai(const Isoline& isoline, double s, double eta_hat, double beta) {
  if (isoline.scale != ScaleTag::frechet)
    throw Error("project", "scaling requires a frechet-scale isoline");
  if (!(s > 1.0)) throw Error("project", "scaling factor must exceed 1");

  Isoline out = isoline;
  out.level = isoline.level / s;
  out.provenance = Provenance::projected_ai;
  for (Vec2& p : out.points) {
    const ScalingExponents e = smoothed_exponents(p, eta_hat, beta);
    p.x *= power_scale(s, e.eta1);
    p.y *= power_scale(s, e.eta2);
  }
  if (!has_strict_negative_slopes(out.points))
    throw Error("project",
                "scaled isoline lost its negative slope; the base line is invalid");
  return out;
}

std::vector<Isoline> project_pipeline(const Isoline& base_original,
                                      const MarginalTransform& mt1,
                                      const MarginalTransform& mt2,
                                      const ProjectionConfig& config) {
  if (base_original.scale != ScaleTag::original)
    throw Error("project", "base isoline must be on the original scale");
  if (!(config.p_base > 0.0 && config.p_base < 1.0))
    throw Error("project", "p_base must lie in (0,1)");
  for (double p : config.p_proj)
    if (!(p > 0.0 && p <= config.p_base))
      throw Error("project", "every projection level must lie in (0, p_base]");

  // The transform is constant below the data minimum (floor probability), so
  // vertices there would collapse to duplicate frechet coordinates. Trim
  // them; the trimmed end keeps its clipped flag.
  Isoline base_frechet;
  base_frechet.level = config.p_base;
  base_frechet.scale = ScaleTag::frechet;
  base_frechet.provenance = base_original.provenance;
  bool trimmed_start = false, trimmed_end = false;
  for (std::size_t k = 0; k < base_original.points.size(); ++k) {
    const Vec2& p = base_original.points[k];
    if (p.x < mt1.data_min() || p.y < mt2.data_min()) {
      if (base_frechet.points.empty())
        trimmed_start = true;
      else
        trimmed_end = true;
      continue;
    }
    base_frechet.points.push_back({mt1.to_frechet(p.x), mt2.to_frechet(p.y)});
  }
  if (base_frechet.points.size() < 2)
    throw Error("project", "base isoline has fewer than 2 vertices inside the data range");
  base_frechet.clipped_start = base_original.clipped_start || trimmed_start;
  base_frechet.clipped_end = base_original.clipped_end || trimmed_end;
  if (!has_strict_negative_slopes(base_frechet.points))
    throw Error("project", "transformed base isoline is not strictly monotone");

  std::vector<Isoline> out;
  out.reserve(config.p_proj.size());
  for (double p_proj : config.p_proj) {
    const double s = config.p_base / p_proj;
    Isoline scaled;
    if (s == 1.0) {
      scaled = base_frechet;
      scaled.provenance = config.mode == DependenceMode::ad ? Provenance::projected_ad
                                                            : Provenance::projected_ai;
    } else if (config.mode == DependenceMode::ad) {
      scaled = scale_ad(base_frechet, s);
    } else {
      scaled = scale_ai(base_frechet, s, config.eta_hat, config.beta);
    }

    Isoline mapped;
    mapped.level = scaled.level;
    mapped.scale = ScaleTag::original;
    mapped.provenance = scaled.provenance;
    mapped.clipped_start = scaled.clipped_start;
    mapped.clipped_end = scaled.clipped_end;
    mapped.points.reserve(scaled.points.size());
    for (const Vec2& z : scaled.points) {
      const InverseResult rx = mt1.from_frechet(z.x);
      const InverseResult ry = mt2.from_frechet(z.y);
      if (rx.clipped || ry.clipped) ++mapped.inverse_clip_count;
      mapped.points.push_back({rx.x, ry.x});
    }
    // Inverse clipping can pin consecutive vertices to the same coordinate;
    // drop the duplicates before validating.
    std::vector<Vec2> cleaned;
    cleaned.reserve(mapped.points.size());
    for (const Vec2& p : mapped.points) {
      if (!cleaned.empty() && (p.x == cleaned.back().x || p.y == cleaned.back().y))
        continue;
      cleaned.push_back(p);
    }
    mapped.points = std::move(cleaned);
    mapped.validate();
    out.push_back(std::move(mapped));
  }
  return out;
}

}  // namespace exiso
