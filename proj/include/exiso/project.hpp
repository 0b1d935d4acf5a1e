#pragma once

#include <vector>

#include "exiso/isoline.hpp"
#include "exiso/marginal.hpp"

namespace exiso {

enum class DependenceMode { ad, ai };

const char* to_string(DependenceMode mode);

struct ProjectionConfig {
  double p_base = 0.01;
  std::vector<double> p_proj;  // each < p_base (== p_base allowed: identity)
  DependenceMode mode = DependenceMode::ad;
  double beta = 200.0;    // ai only
  double eta_hat = 0.5;   // ai only
};

// Per-coordinate scaling exponents for the smoothed axis transition:
// m_i = 1 - (z_i / (z1 + z2))^beta, eta_i = m_i * eta_hat + (1 - m_i).
struct ScalingExponents {
  double m1 = 0.0, m2 = 0.0;
  double eta1 = 1.0, eta2 = 1.0;
};

ScalingExponents smoothed_exponents(const Vec2& z_base, double eta_hat, double beta);

// First-order scaling: every vertex multiplied by s, level divided by s.
Isoline scale_ad(const Isoline& isoline, double s);

// Hidden-regular-variation scaling with smoothed transition to the axes:
// vertex (z1, z2) maps to (s^eta1 z1, s^eta2 z2). Preserves strict negative
// slopes; a violation is fatal.
Isoline scale_ai(const Isoline& isoline, double s, double eta_hat, double beta);

// Full projection: base isoline (original scale) -> frechet scale through
// the fitted marginals -> scaled per mode for each p_proj -> back to the
// original scale. Vertices below the data minimum (where the transform
// degenerates to the floor probability) are trimmed first; inverse-clip
// flags are carried on each output line.
std::vector<Isoline> project_pipeline(const Isoline& base_original,
                                      const MarginalTransform& mt1,
                                      const MarginalTransform& mt2,
                                      const ProjectionConfig& config);

}  // namespace exiso
