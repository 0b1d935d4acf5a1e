#pragma once

#include <span>
#include <string>
#include <vector>

#include "exiso/gpd.hpp"
#include "exiso/sample.hpp"

namespace exiso {

struct MarginalOptions {
  double q_thold = 0.97;
  double q_thold_plus = 0.98;
  std::size_t min_exceed = 10;
  std::size_t check_grid_size = 10000;
};

struct InverseResult {
  double x = 0.0;
  bool clipped = false;  // target probability outside the invertible range
};

// Blended marginal distribution: linearly interpolated empirical CDF below
// the blend window, a GPD tail spliced in as a conditional exceedance model
// above it, and a sinusoidal weight in between. Provides the unit-Frechet
// transform and its numeric inverse.
class MarginalTransform {
 public:
  MarginalTransform() = default;

  // Fitted quantities.
  const std::vector<double>& knots_x() const { return knots_x_; }
  const std::vector<double>& knots_p() const { return knots_p_; }
  const GpdFit& gpd() const { return gpd_; }
  double x_thold() const { return x_thold_; }
  double x_thold_plus() const { return x_thold_plus_; }
  double q_thold() const { return q_thold_; }
  double q_thold_plus() const { return q_thold_plus_; }
  double floor_prob() const { return floor_prob_; }
  bool monotone_verified() const { return monotone_verified_; }
  double data_min() const { return knots_x_.front(); }
  double data_max() const { return knots_x_.back(); }

  // Finite upper endpoint of the fitted blend (xi < 0), +inf otherwise.
  double upper_endpoint() const;

  // Blend weight w(x): 0 below x_thold, 1 above x_thold_plus, sinusoidal
  // in between.
  double blend_weight(double x) const;

  // Blended CDF F(x) in (0,1); below the data minimum returns the floor
  // probability 1/(2(n+1)).
  double cdf(double x) const;

  // 1 - cdf(x), computed without cancellation in the far tail.
  double survival(double x) const;

  // z = -1/log F(x). Requires F(x) in (0,1); values at or beyond a finite
  // fitted endpoint are fatal.
  double to_frechet(double x) const;

  // Monotone inversion of to_frechet by bisection on the survival scale.
  // Targets outside the invertible range are clipped to the data minimum or
  // the fitted endpoint and flagged.
  InverseResult from_frechet(double z) const;

  std::string to_json() const;
  static MarginalTransform from_json(const std::string& text);

  friend MarginalTransform fit_marginal(std::span<const double> values,
                                        const MarginalOptions& opts);

 private:
  double empirical_cdf(double x) const;
  double tail_cdf(double x) const;  // conditional-GPD branch
  void verify_monotone(std::size_t grid_size);

  std::vector<double> knots_x_;  // sorted unique data values
  std::vector<double> knots_p_;  // plotting positions count(<=x)/(n+1)
  GpdFit gpd_;
  double x_thold_ = 0.0;
  double x_thold_plus_ = 0.0;
  double q_thold_ = 0.0;
  double q_thold_plus_ = 0.0;
  double floor_prob_ = 0.0;
  double emp_at_thold_ = 0.0;  // empirical CDF level at the GPD threshold
  bool monotone_verified_ = false;
};

// Inverse of the interpolated empirical CDF with i/(n+1) plotting positions.
double ecdf_quantile(std::span<const double> knots_x, std::span<const double> knots_p,
                     double q);

// Fits one margin: ECDF knots, GPD above the empirical q_thold quantile,
// blend window [q_thold, q_thold_plus] quantiles, then verifies strict
// monotonicity of the blend on a dense grid (failure is fatal).
MarginalTransform fit_marginal(std::span<const double> values,
                               const MarginalOptions& opts = {});

// Applies the per-coordinate transforms to a whole sample, producing the
// frechet-tagged sample.
BivariateSample transform_sample(const BivariateSample& sample,
                                 const MarginalTransform& mt1,
                                 const MarginalTransform& mt2);

}  // namespace exiso
