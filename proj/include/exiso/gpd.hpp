#pragma once

#include <span>

namespace exiso {

// Generalized Pareto fit for excesses over a threshold. sigma/xi are the
// usual scale and shape; threshold is carried in original units by the
// caller that chose it.
struct GpdFit {
  double threshold = 0.0;
  double sigma = 1.0;
  double xi = 0.0;
  std::size_t n_exceed = 0;
  double neg_log_lik = 0.0;
  bool hit_bound = false;     // optimizer ended on the xi box boundary
  bool pwm_fallback = false;  // ML did not converge; probability-weighted moments used
};

// CDF of the GPD for an excess y >= 0.
double gpd_cdf(double y, double sigma, double xi);

// Quantile of the GPD: smallest y with gpd_cdf(y) >= q, q in [0,1).
double gpd_quantile(double q, double sigma, double xi);

// Maximum-likelihood fit on positive excesses, constrained to sigma > 0 and
// xi in [-0.9, 1.0]. Falls back to probability-weighted moments when the
// simplex search fails to converge; that too failing is fatal.
GpdFit fit_gpd(std::span<const double> excesses, std::size_t min_exceed = 10);

}  // namespace exiso
