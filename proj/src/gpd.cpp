#include "exiso/gpd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "exiso/error.hpp"

namespace exiso {

namespace {

constexpr double kXiMin = -0.9;
constexpr double kXiMax = 1.0;
constexpr double kXiZero = 1e-9;  // |xi| below this uses the exponential branch

double neg_log_lik(std::span<const double> y, double log_sigma, double xi) {
  if (xi < kXiMin || xi > kXiMax) return std::numeric_limits<double>::infinity();
  const double sigma = std::exp(log_sigma);
  const double k = static_cast<double>(y.size());
  double nll = k * log_sigma;
  if (std::abs(xi) < kXiZero) {
    double sum = 0.0;
    for (double v : y) sum += v;
    return nll + sum / sigma;
  }
  const double c = 1.0 + 1.0 / xi;
  for (double v : y) {
    const double arg = xi * v / sigma;
    if (arg <= -1.0) return std::numeric_limits<double>::infinity();
    nll += c * std::log1p(arg);
  }
  return nll;
}

// Probability-weighted moments (Hosking & Wallis 1987): start point and
// fallback estimator.
bool pwm_estimate(std::span<const double> y_sorted, double& sigma, double& xi) {
  const std::size_t n = y_sorted.size();
  double a0 = 0.0, a1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a0 += y_sorted[i];
    a1 += y_sorted[i] * static_cast<double>(n - 1 - i) / static_cast<double>(n - 1);
  }
  a0 /= static_cast<double>(n);
  a1 /= static_cast<double>(n);
  const double denom = a0 - 2.0 * a1;
  if (denom <= 0.0) return false;
  xi = 2.0 - a0 / denom;
  sigma = 2.0 * a0 * a1 / denom;
  return sigma > 0.0;
}

struct SimplexPoint {
  std::array<double, 2> x;  // (log sigma, xi)
  double f;
};

}  // namespace

double gpd_cdf(double y, double sigma, double xi) {
  if (y <= 0.0) return 0.0;
  if (std::abs(xi) < kXiZero) return -std::expm1(-y / sigma);
  const double arg = xi * y / sigma;
  if (arg <= -1.0) return 1.0;  // beyond the upper endpoint (xi < 0)
  return -std::expm1(-std::log1p(arg) / xi);
}

double gpd_quantile(double q, double sigma, double xi) {
  if (q < 0.0 || q >= 1.0) throw Error("marginal", "GPD quantile level must lie in [0,1)");
  if (q == 0.0) return 0.0;
  if (std::abs(xi) < kXiZero) return -sigma * std::log1p(-q);
  return sigma / xi * std::expm1(-xi * std::log1p(-q));
}

GpdFit fit_gpd(std::span<const double> excesses, std::size_t min_exceed) {
  if (excesses.size() < min_exceed)
    throw Error("marginal", "too few exceedances for the GPD fit (" +
                                std::to_string(excesses.size()) + " < " +
                                std::to_string(min_exceed) + ")");
  std::vector<double> y(excesses.begin(), excesses.end());
  std::sort(y.begin(), y.end());
  if (y.front() <= 0.0) throw Error("marginal", "excesses must be positive");

  double sigma0 = 0.0, xi0 = 0.0;
  if (!pwm_estimate(y, sigma0, xi0)) {
    sigma0 = y[y.size() / 2];  // rough scale from the median excess
    xi0 = 0.1;
  }
  xi0 = std::clamp(xi0, kXiMin + 0.05, kXiMax - 0.05);

  auto objective = [&](const std::array<double, 2>& p) {
    return neg_log_lik(y, p[0], p[1]);
  };

  // Nelder-Mead on (log sigma, xi) with an infinite barrier outside the box.
  std::array<SimplexPoint, 3> s;
  s[0].x = {std::log(sigma0), xi0};
  s[1].x = {std::log(sigma0) + 0.3, xi0};
  s[2].x = {std::log(sigma0), std::min(xi0 + 0.2, kXiMax - 1e-3)};
  for (auto& pt : s) pt.f = objective(pt.x);

  bool converged = false;
  for (int iter = 0; iter < 800; ++iter) {
    std::sort(s.begin(), s.end(),
              [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });
    const double spread = std::abs(s[2].f - s[0].f);
    const double width = std::max(std::abs(s[2].x[0] - s[0].x[0]),
                                  std::abs(s[2].x[1] - s[0].x[1]));
    if (spread < 1e-11 * (1.0 + std::abs(s[0].f)) && width < 1e-9) {
      converged = true;
      break;
    }
    const std::array<double, 2> centroid = {(s[0].x[0] + s[1].x[0]) / 2.0,
                                            (s[0].x[1] + s[1].x[1]) / 2.0};
    auto affine = [&](double t) {
      return std::array<double, 2>{centroid[0] + t * (centroid[0] - s[2].x[0]),
                                   centroid[1] + t * (centroid[1] - s[2].x[1])};
    };
    const auto xr = affine(1.0);
    const double fr = objective(xr);
    if (fr < s[0].f) {
      const auto xe = affine(2.0);
      const double fe = objective(xe);
      if (fe < fr) {
        s[2] = {xe, fe};
      } else {
        s[2] = {xr, fr};
      }
    } else if (fr < s[1].f) {
      s[2] = {xr, fr};
    } else {
      const auto xc = affine(fr < s[2].f ? 0.5 : -0.5);
      const double fc = objective(xc);
      if (fc < std::min(fr, s[2].f)) {
        s[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = {(s[i].x[0] + s[0].x[0]) / 2.0, (s[i].x[1] + s[0].x[1]) / 2.0};
          s[i].f = objective(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(),
            [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });

  GpdFit fit;
  fit.n_exceed = y.size();
  if (converged && std::isfinite(s[0].f)) {
    fit.sigma = std::exp(s[0].x[0]);
    fit.xi = s[0].x[1];
    fit.neg_log_lik = s[0].f;
    fit.hit_bound = fit.xi <= kXiMin + 1e-6 || fit.xi >= kXiMax - 1e-6;
  } else {
    double sigma = 0.0, xi = 0.0;
    if (!pwm_estimate(y, sigma, xi) || !std::isfinite(sigma))
      throw Error("marginal",
                  "GPD fit failed: likelihood search did not converge and the "
                  "moment fallback is invalid");
    fit.sigma = sigma;
    fit.xi = std::clamp(xi, kXiMin, kXiMax);
    fit.neg_log_lik = neg_log_lik(y, std::log(sigma), fit.xi);
    fit.pwm_fallback = true;
    if (!std::isfinite(fit.neg_log_lik))
      throw Error("marginal", "GPD fit failed: fallback parameters have zero likelihood");
  }
  return fit;
}

}  // namespace exiso
