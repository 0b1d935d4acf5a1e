#include "exiso/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "exiso/error.hpp"

namespace exiso {

namespace {

constexpr double kPi = 3.14159265358979323846;

// GPD survival (1 + xi y / sigma)^(-1/xi), computed in log space.
double gpd_survival(double y, double sigma, double xi) {
  if (y <= 0.0) return 1.0;
  if (std::abs(xi) < 1e-9) return std::exp(-y / sigma);
  const double arg = xi * y / sigma;
  if (arg <= -1.0) return 0.0;
  return std::exp(-std::log1p(arg) / xi);
}

}  // namespace

double ecdf_quantile(std::span<const double> knots_x, std::span<const double> knots_p,
                     double q) {
  if (knots_x.empty()) throw Error("marginal", "empty knot set");
  if (q <= knots_p.front()) return knots_x.front();
  if (q >= knots_p.back()) return knots_x.back();
  const auto it = std::lower_bound(knots_p.begin(), knots_p.end(), q);
  const std::size_t j = static_cast<std::size_t>(it - knots_p.begin());
  const double p0 = knots_p[j - 1], p1 = knots_p[j];
  const double frac = (q - p0) / (p1 - p0);
  return knots_x[j - 1] + frac * (knots_x[j] - knots_x[j - 1]);
}

double MarginalTransform::upper_endpoint() const {
  if (gpd_.xi < 0.0) return x_thold_ - gpd_.sigma / gpd_.xi;
  return std::numeric_limits<double>::infinity();
}

double MarginalTransform::blend_weight(double x) const {
  if (x <= x_thold_) return 0.0;
  if (x >= x_thold_plus_) return 1.0;
  const double r = (x - x_thold_) / (x_thold_plus_ - x_thold_);
  return (std::sin(kPi * r - kPi / 2.0) + 1.0) / 2.0;
}

double MarginalTransform::empirical_cdf(double x) const {
  if (x < knots_x_.front()) return floor_prob_;
  if (x >= knots_x_.back()) return knots_p_.back();
  const auto it = std::upper_bound(knots_x_.begin(), knots_x_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - knots_x_.begin());  // >= 1
  const double x0 = knots_x_[j - 1], x1 = knots_x_[j];
  const double p0 = knots_p_[j - 1], p1 = knots_p_[j];
  return p0 + (x - x0) / (x1 - x0) * (p1 - p0);
}

double MarginalTransform::tail_cdf(double x) const {
  const double h = gpd_cdf(x - x_thold_, gpd_.sigma, gpd_.xi);
  return emp_at_thold_ + (1.0 - emp_at_thold_) * h;
}

double MarginalTransform::cdf(double x) const {
  const double w = blend_weight(x);
  if (w <= 0.0) return empirical_cdf(x);
  if (w >= 1.0) return tail_cdf(x);
  return (1.0 - w) * empirical_cdf(x) + w * tail_cdf(x);
}

double MarginalTransform::survival(double x) const {
  const double w = blend_weight(x);
  const double s_tail =
      (w > 0.0) ? (1.0 - emp_at_thold_) * gpd_survival(x - x_thold_, gpd_.sigma, gpd_.xi)
                : 0.0;
  if (w >= 1.0) return s_tail;
  const double s_emp = 1.0 - empirical_cdf(x);
  if (w <= 0.0) return s_emp;
  return (1.0 - w) * s_emp + w * s_tail;
}

double MarginalTransform::to_frechet(double x) const {
  const double f = cdf(x);
  if (f <= 0.0) throw Error("marginal", "CDF not positive at requested point");
  if (f < 0.5) return -1.0 / std::log(f);
  const double s = survival(x);
  if (s <= 0.0)
    throw Error("marginal", "value at or beyond the fitted upper endpoint");
  return -1.0 / std::log1p(-s);
}

InverseResult MarginalTransform::from_frechet(double z) const {
  if (!(z > 0.0)) throw Error("marginal", "from_frechet requires z > 0");
  const double s_target = -std::expm1(-1.0 / z);  // target survival, exact for all z

  double lo = knots_x_.front();
  const double s_lo = survival(lo);
  if (s_target >= s_lo) {
    // Inverse would fall below the data minimum where the CDF is floored.
    return {lo, s_target > s_lo};
  }

  double hi;
  if (gpd_.xi < 0.0) {
    const double end = upper_endpoint();
    hi = end - std::max(std::abs(end), 1.0) * 1e-15;
    if (survival(hi) > s_target) return {hi, true};
  } else {
    hi = std::max(knots_x_.back(), x_thold_ + gpd_.sigma);
    double span = std::max(hi - lo, 1.0);
    while (survival(hi) > s_target) {
      span *= 4.0;
      hi += span;
      if (hi > 1e300)
        throw Error("marginal", "from_frechet bracket exceeded numeric range");
    }
  }

  // Bisection on x; survival is continuous and strictly decreasing here.
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double s_mid = survival(mid);
    if (s_mid == s_target) return {mid, false};
    if (s_mid > s_target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4e-16 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
  }
  return {0.5 * (lo + hi), false};
}

void MarginalTransform::verify_monotone(std::size_t grid_size) {
  const double lo = knots_x_.front();
  double hi = knots_x_.back();
  // Extend the check range to the fitted 1 - 1e-6 quantile.
  const double s_far = 1e-6;
  const double cond = s_far / (1.0 - emp_at_thold_);
  if (cond < 1.0) {
    const double y = gpd_quantile(1.0 - cond, gpd_.sigma, gpd_.xi);
    hi = std::max(hi, x_thold_ + y);
  }
  const double step = (hi - lo) / static_cast<double>(grid_size - 1);
  double prev = cdf(lo);
  if (!(prev > 0.0 && prev < 1.0))
    throw Error("marginal", "blended CDF outside (0,1) at the data minimum");
  for (std::size_t i = 1; i < grid_size; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const double f = cdf(x);
    if (!std::isfinite(f) || !(f > 0.0 && f < 1.0))
      throw Error("marginal", "blended CDF outside (0,1) on the check grid");
    if (!(f > prev))
      throw Error("marginal",
                  "blended CDF is not strictly increasing near x = " + std::to_string(x) +
                      "; widen the blend window or raise the threshold");
    prev = f;
  }
  monotone_verified_ = true;
}

MarginalTransform fit_marginal(std::span<const double> values, const MarginalOptions& opts) {
  if (!(opts.q_thold > 0.5 && opts.q_thold < opts.q_thold_plus && opts.q_thold_plus < 1.0))
    throw Error("marginal", "thresholds must satisfy 0.5 < q_thold < q_thold_plus < 1");
  if (values.size() < 20) throw Error("marginal", "need at least 20 values to fit a margin");
  for (double v : values)
    if (!std::isfinite(v)) throw Error("marginal", "non-finite value in margin data");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  MarginalTransform mt;
  mt.q_thold_ = opts.q_thold;
  mt.q_thold_plus_ = opts.q_thold_plus;
  mt.floor_prob_ = 1.0 / (2.0 * static_cast<double>(n + 1));

  // Unique knots at plotting positions count(<= x)/(n+1).
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && sorted[i + 1] == sorted[i]) continue;
    mt.knots_x_.push_back(sorted[i]);
    mt.knots_p_.push_back(static_cast<double>(i + 1) / static_cast<double>(n + 1));
  }
  if (mt.knots_x_.size() < 2)
    throw Error("marginal", "margin is degenerate (fewer than 2 distinct values)");

  mt.x_thold_ = ecdf_quantile(mt.knots_x_, mt.knots_p_, opts.q_thold);
  mt.x_thold_plus_ = ecdf_quantile(mt.knots_x_, mt.knots_p_, opts.q_thold_plus);
  if (!(mt.x_thold_ < mt.x_thold_plus_))
    throw Error("marginal",
                "blend window is empty (tied quantiles); widen q_thold/q_thold_plus");

  std::vector<double> excesses;
  for (double v : sorted)
    if (v > mt.x_thold_) excesses.push_back(v - mt.x_thold_);
  GpdFit fit = fit_gpd(excesses, opts.min_exceed);
  fit.threshold = mt.x_thold_;
  mt.gpd_ = fit;
  mt.emp_at_thold_ = mt.empirical_cdf(mt.x_thold_);

  mt.verify_monotone(opts.check_grid_size);
  return mt;
}

BivariateSample transform_sample(const BivariateSample& sample, const MarginalTransform& mt1,
                                 const MarginalTransform& mt2) {
  BivariateSample out;
  out.t = sample.t;
  out.month = sample.month;
  out.labels = {sample.labels[0] + "_frechet", sample.labels[1] + "_frechet"};
  out.scale = ScaleTag::frechet;
  out.x1.reserve(sample.size());
  out.x2.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out.x1.push_back(mt1.to_frechet(sample.x1[i]));
    out.x2.push_back(mt2.to_frechet(sample.x2[i]));
  }
  out.validate();
  return out;
}

std::string MarginalTransform::to_json() const {
  nlohmann::json j;
  j["knots_x"] = knots_x_;
  j["knots_p"] = knots_p_;
  j["gpd"] = {{"threshold", gpd_.threshold},   {"sigma", gpd_.sigma},
              {"xi", gpd_.xi},                 {"n_exceed", gpd_.n_exceed},
              {"neg_log_lik", gpd_.neg_log_lik}, {"hit_bound", gpd_.hit_bound},
              {"pwm_fallback", gpd_.pwm_fallback}};
  j["x_thold"] = x_thold_;
  j["x_thold_plus"] = x_thold_plus_;
  j["q_thold"] = q_thold_;
  j["q_thold_plus"] = q_thold_plus_;
  j["floor_prob"] = floor_prob_;
  j["emp_at_thold"] = emp_at_thold_;
  j["monotone_verified"] = monotone_verified_;
  return j.dump(2);
}

MarginalTransform MarginalTransform::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MarginalTransform mt;
  mt.knots_x_ = j.at("knots_x").get<std::vector<double>>();
  mt.knots_p_ = j.at("knots_p").get<std::vector<double>>();
  const auto& g = j.at("gpd");
  mt.gpd_.threshold = g.at("threshold").get<double>();
  mt.gpd_.sigma = g.at("sigma").get<double>();
  mt.gpd_.xi = g.at("xi").get<double>();
  mt.gpd_.n_exceed = g.at("n_exceed").get<std::size_t>();
  mt.gpd_.neg_log_lik = g.at("neg_log_lik").get<double>();
  mt.gpd_.hit_bound = g.at("hit_bound").get<bool>();
  mt.gpd_.pwm_fallback = g.at("pwm_fallback").get<bool>();
  mt.x_thold_ = j.at("x_thold").get<double>();
  mt.x_thold_plus_ = j.at("x_thold_plus").get<double>();
  mt.q_thold_ = j.at("q_thold").get<double>();
  mt.q_thold_plus_ = j.at("q_thold_plus").get<double>();
  mt.floor_prob_ = j.at("floor_prob").get<double>();
  mt.emp_at_thold_ = j.at("emp_at_thold").get<double>();
  mt.monotone_verified_ = j.at("monotone_verified").get<bool>();
  if (mt.knots_x_.size() < 2 || mt.knots_x_.size() != mt.knots_p_.size())
    throw Error("marginal", "invalid marginal JSON: bad knot arrays");
  return mt;
}

}  // namespace exiso
