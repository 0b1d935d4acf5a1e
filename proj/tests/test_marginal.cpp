#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "exiso/error.hpp"
#include "exiso/gpd.hpp"
#include "exiso/marginal.hpp"
#include "exiso/rng.hpp"
#include "exiso/synth.hpp"

using namespace exiso;

namespace {

// Oracle data from the GPD quantile function itself.
std::vector<double> simulate_gpd(double sigma, double xi, std::size_t n,
                                 std::uint64_t seed) {
  rng::Stream stream(seed);
  std::vector<double> out(n);
  for (double& v : out) v = gpd_quantile(stream.uniform(), sigma, xi);
  return out;
}

std::vector<double> simulate_uniform(std::size_t n, std::uint64_t seed) {
  rng::Stream stream(seed);
  std::vector<double> out(n);
  for (double& v : out) v = stream.uniform();
  return out;
}

}  // namespace

TEST_CASE("GPD CDF endpoints and the exponential special case") {
  CHECK(gpd_cdf(0.0, 1.0, 0.2) == 0.0);
  CHECK(gpd_cdf(-1.0, 1.0, 0.2) == 0.0);
  CHECK(gpd_cdf(1e12, 2.0, 0.3) == doctest::Approx(1.0));
  CHECK(gpd_cdf(1e12, 2.0, 0.0) == doctest::Approx(1.0));
  // xi = 0: median excess is sigma * log 2.
  const double sigma = 1.7;
  CHECK(gpd_cdf(sigma * std::log(2.0), sigma, 0.0) == doctest::Approx(0.5));
  CHECK(gpd_quantile(0.5, sigma, 0.0) == doctest::Approx(sigma * std::log(2.0)));
}

TEST_CASE("GPD quantile inverts the CDF") {
  for (double xi : {-0.4, -0.1, 0.0, 0.2, 0.8}) {
    for (double q : {0.05, 0.5, 0.9, 0.999}) {
      const double y = gpd_quantile(q, 2.0, xi);
      CHECK(gpd_cdf(y, 2.0, xi) == doctest::Approx(q).epsilon(1e-10));
    }
  }
}

TEST_CASE("ML fit recovers (sigma, xi) = (1, 0.2) within 0.02 at n = 1e5") {
  const auto y = simulate_gpd(1.0, 0.2, 100000, 920);
  const GpdFit fit = fit_gpd(y);
  CHECK(std::abs(fit.sigma - 1.0) < 0.02);
  CHECK(std::abs(fit.xi - 0.2) < 0.02);
  CHECK_FALSE(fit.hit_bound);
  CHECK_FALSE(fit.pwm_fallback);
  CHECK(fit.n_exceed == 100000);
}

TEST_CASE("ML fit on exponential data keeps |xi| < 0.05 at n = 1e5") {
  const auto y = simulate_gpd(2.0, 0.0, 100000, 921);
  const GpdFit fit = fit_gpd(y);
  CHECK(std::abs(fit.xi) < 0.05);
  CHECK(std::abs(fit.sigma - 2.0) < 0.05);
}

TEST_CASE("negative-shape fit keeps the endpoint above the largest excess") {
  const auto y = simulate_gpd(1.0, -0.3, 20000, 922);
  const GpdFit fit = fit_gpd(y);
  CHECK(fit.xi < 0.0);
  const double endpoint = -fit.sigma / fit.xi;
  CHECK(endpoint > *std::max_element(y.begin(), y.end()));
}

TEST_CASE("too few exceedances is fatal") {
  std::vector<double> y{0.5, 1.2, 0.1};
  CHECK_THROWS_AS(fit_gpd(y), Error);
}

TEST_CASE("fit_marginal rejects a disordered blend window") {
  const auto v = simulate_uniform(1000, 5);
  MarginalOptions opts;
  opts.q_thold = 0.98;
  opts.q_thold_plus = 0.97;
  CHECK_THROWS_AS(fit_marginal(v, opts), Error);
  opts.q_thold = 0.4;
  opts.q_thold_plus = 0.5;
  CHECK_THROWS_AS(fit_marginal(v, opts), Error);
}

TEST_CASE("blended CDF tracks the exact uniform CDF at the median") {
  const auto v = simulate_uniform(10000, 31);
  const MarginalTransform mt = fit_marginal(v);
  const double median = ecdf_quantile(mt.knots_x(), mt.knots_p(), 0.5);
  CHECK(std::abs(mt.cdf(median) - 0.5) < 0.02);
  CHECK(mt.monotone_verified());
}

TEST_CASE("blend weight hits 0, 1/2, 1 at the window landmarks") {
  const auto v = simulate_uniform(5000, 77);
  const MarginalTransform mt = fit_marginal(v);
  CHECK(mt.blend_weight(mt.x_thold()) == 0.0);
  CHECK(mt.blend_weight(mt.x_thold() - 1.0) == 0.0);
  CHECK(mt.blend_weight(mt.x_thold_plus()) == 1.0);
  CHECK(mt.blend_weight(mt.x_thold_plus() + 1.0) == 1.0);
  const double mid = 0.5 * (mt.x_thold() + mt.x_thold_plus());
  CHECK(mt.blend_weight(mid) == doctest::Approx(0.5).epsilon(1e-9));
  // At the midpoint the blend is the even mixture of the two estimates.
  const double f_emp_half = mt.cdf(mt.x_thold());
  (void)f_emp_half;
}

TEST_CASE("below x_thold the blend is purely empirical, above x_thold_plus purely GPD") {
  const auto v = simulate_uniform(5000, 78);
  const MarginalTransform mt = fit_marginal(v);
  const double x_below = 0.5 * (mt.data_min() + mt.x_thold());
  // Pure empirical: interpolating the knots reproduces cdf exactly.
  const auto& kx = mt.knots_x();
  const auto& kp = mt.knots_p();
  const auto it = std::upper_bound(kx.begin(), kx.end(), x_below);
  const std::size_t j = static_cast<std::size_t>(it - kx.begin());
  const double expected =
      kp[j - 1] + (x_below - kx[j - 1]) / (kx[j] - kx[j - 1]) * (kp[j] - kp[j - 1]);
  CHECK(mt.cdf(x_below) == expected);
  CHECK(mt.blend_weight(x_below) == 0.0);

  const double x_above = mt.x_thold_plus() + 0.25 * (mt.data_max() - mt.x_thold_plus());
  CHECK(mt.blend_weight(x_above) == 1.0);
  const double h = gpd_cdf(x_above - mt.x_thold(), mt.gpd().sigma, mt.gpd().xi);
  const double f_emp_u = mt.cdf(mt.x_thold());
  CHECK(mt.cdf(x_above) == doctest::Approx(f_emp_u + (1.0 - f_emp_u) * h).epsilon(1e-12));
}

TEST_CASE("GPD splice is continuous at the threshold") {
  const auto v = simulate_uniform(5000, 79);
  const MarginalTransform mt = fit_marginal(v);
  const double eps = (mt.x_thold_plus() - mt.x_thold()) * 1e-9;
  const double below = mt.cdf(mt.x_thold() - eps);
  const double above = mt.cdf(mt.x_thold() + eps);
  CHECK(std::abs(below - above) < 1e-6);
}

TEST_CASE("CDF stays in (0,1) over the data range and floors below the minimum") {
  const auto v = simulate_uniform(2000, 80);
  const MarginalTransform mt = fit_marginal(v);
  CHECK(mt.cdf(mt.data_min()) > 0.0);
  CHECK(mt.cdf(mt.data_max()) < 1.0);
  CHECK(mt.cdf(mt.data_min() - 100.0) == mt.floor_prob());
  CHECK(mt.floor_prob() == doctest::Approx(1.0 / (2.0 * 2001.0)));
}

TEST_CASE("frechet transform closed forms: F = e^{-1} maps to z = 1") {
  const auto v = simulate_uniform(20000, 81);
  const MarginalTransform mt = fit_marginal(v);
  // Find x with F(x) = e^{-1} by inverse, then check the transform value.
  const InverseResult inv = mt.from_frechet(1.0);
  REQUIRE_FALSE(inv.clipped);
  CHECK(mt.cdf(inv.x) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(mt.to_frechet(inv.x) == doctest::Approx(1.0).epsilon(1e-9));

  const InverseResult inv2 = mt.from_frechet(2.0);
  CHECK(mt.cdf(inv2.x) == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
}

TEST_CASE("to_frechet is strictly increasing and positive on the data range") {
  const auto v = simulate_uniform(3000, 82);
  const MarginalTransform mt = fit_marginal(v);
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x =
        mt.data_min() + (mt.data_max() - mt.data_min()) * static_cast<double>(i) / 200.0;
    const double z = mt.to_frechet(x);
    CHECK(z > prev);
    CHECK(std::isfinite(z));
    prev = z;
  }
}

TEST_CASE("round trip from_frechet(to_frechet(x)) is 1e-8-accurate on 1000 points") {
  for (std::uint64_t seed : {101ULL, 102ULL}) {
    const auto v = simulate_uniform(5000, seed);
    const MarginalTransform mt = fit_marginal(v);
    rng::Stream stream(seed + 1000);
    for (int i = 0; i < 1000; ++i) {
      const double x =
          mt.data_min() + (mt.data_max() - mt.data_min()) * stream.uniform();
      const InverseResult inv = mt.from_frechet(mt.to_frechet(x));
      CHECK_FALSE(inv.clipped);
      CHECK(std::abs(inv.x - x) <= 1e-8 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("from_frechet clips beyond the fitted endpoint and below the data minimum") {
  // Bounded upper tail: uniform data drives xi < 0 (clamped at the box).
  const auto v = simulate_uniform(5000, 83);
  const MarginalTransform mt = fit_marginal(v);
  if (mt.gpd().xi < 0.0) {
    const InverseResult inv = mt.from_frechet(1e290);
    CHECK(inv.clipped);
    CHECK(inv.x <= mt.upper_endpoint());
  }
  const InverseResult low = mt.from_frechet(1e-9);
  CHECK(low.clipped);
  CHECK(low.x == mt.data_min());
}

TEST_CASE("marginal JSON round trip preserves the transform") {
  const auto v = simulate_uniform(3000, 84);
  const MarginalTransform mt = fit_marginal(v);
  const MarginalTransform back = MarginalTransform::from_json(mt.to_json());
  CHECK(back.x_thold() == mt.x_thold());
  CHECK(back.gpd().sigma == mt.gpd().sigma);
  CHECK(back.gpd().xi == mt.gpd().xi);
  for (double x : {0.1, 0.5, 0.9, 0.97, 0.995}) {
    CHECK(back.cdf(x) == mt.cdf(x));
  }
}

TEST_CASE("transform_sample produces a positive finite frechet sample") {
  const BivariateSample sample =
      generate({SynthFamily::gaussian_copula, 0.3, MarginKind::uniform}, 2000, 9);
  const MarginalTransform mt1 = fit_marginal(sample.x1);
  const MarginalTransform mt2 = fit_marginal(sample.x2);
  const BivariateSample z = transform_sample(sample, mt1, mt2);
  CHECK(z.scale == ScaleTag::frechet);
  CHECK(z.size() == sample.size());
  for (double v : z.x1) CHECK(v > 0.0);
}
