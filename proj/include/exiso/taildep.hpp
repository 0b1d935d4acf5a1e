#pragma once

#include <span>
#include <vector>

#include "exiso/sample.hpp"

namespace exiso {

// Rank-based estimate of chi(u) = P(F1(X1) > u | F2(X2) > u) on a grid of
// probability levels. Entries with an empty conditioning set are flagged
// absent (chi = NaN).
struct ChiCurve {
  std::vector<double> u;
  std::vector<double> chi;  // NaN where absent
  std::vector<std::size_t> joint_count;
  std::vector<std::size_t> cond_count;
};

ChiCurve chi_curve(const BivariateSample& sample, std::span<const double> u_grid);
std::vector<double> default_u_grid();

struct HillPoint {
  std::size_t k = 0;
  double eta = 0.0;
};

// Hill estimate of the coefficient of tail dependence from the structure
// variable min(z1, z2), with the trace over k for the Hill plot.
struct TailDependenceEstimate {
  double eta_hat = 0.0;
  bool clamped = false;  // raw estimate exceeded 1 and was clamped
  double threshold = 0.0;
  double threshold_quantile = 0.0;
  std::size_t k_exceed = 0;
  std::vector<HillPoint> trace;
};

// Hill estimator over exceedances of z_min above its empirical
// threshold_quantile (order-statistic threshold z_(ceil(q n)), so the
// headline estimate coincides with the trace entry at the chosen k).
// Requires a frechet-scale sample and at least 10 exceedances.
TailDependenceEstimate hill_eta(const BivariateSample& sample,
                                double threshold_quantile = 0.98);

}  // namespace exiso
