#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "exiso/error.hpp"
#include "exiso/rng.hpp"
#include "exiso/synth.hpp"
#include "exiso/taildep.hpp"

using namespace exiso;

namespace {

BivariateSample frechet_pair_sample(const std::vector<double>& z1,
                                    const std::vector<double>& z2) {
  BivariateSample s;
  s.scale = ScaleTag::frechet;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    s.t.push_back(static_cast<std::int64_t>(i));
    s.x1.push_back(z1[i]);
    s.x2.push_back(z2[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("chi is 1 for perfectly dependent data") {
  rng::Stream stream(5);
  std::vector<double> v(5000);
  for (double& x : v) x = stream.uniform();
  const BivariateSample s = frechet_pair_sample(v, v);
  const auto u = default_u_grid();
  const ChiCurve curve = chi_curve(s, u);
  for (std::size_t i = 0; i < curve.u.size(); ++i)
    if (curve.cond_count[i] > 0) CHECK(curve.chi[i] == 1.0);
}

TEST_CASE("chi(0.9) near 0.1 for independent uniforms at n = 1e5") {
  const BivariateSample s =
      generate({SynthFamily::gaussian_copula, 0.0, MarginKind::uniform}, 100000, 91);
  const std::array<double, 1> u{0.9};
  const ChiCurve curve = chi_curve(s, u);
  CHECK(std::abs(curve.chi[0] - 0.1) < 0.01);
}

TEST_CASE("chi entries with empty conditioning sets are flagged absent") {
  // 25 points, u = 0.97: no rank exceeds 0.97 * 26.
  std::vector<double> v;
  for (int i = 0; i < 25; ++i) v.push_back(static_cast<double>(i + 1));
  const BivariateSample s = frechet_pair_sample(v, v);
  const std::array<double, 1> u{0.97};
  const ChiCurve curve = chi_curve(s, u);
  CHECK(curve.cond_count[0] == 0);
  CHECK(std::isnan(curve.chi[0]));
}

TEST_CASE("hill estimate is exactly 1 when all log ratios are 1") {
  // 90 values at the threshold level u = 1, 10 exceedances at e * u.
  std::vector<double> z;
  for (int i = 0; i < 90; ++i) z.push_back(1.0);
  for (int i = 0; i < 10; ++i) z.push_back(std::exp(1.0));
  const BivariateSample s = frechet_pair_sample(z, z);
  const TailDependenceEstimate est = hill_eta(s, 0.90);
  CHECK(est.threshold == 1.0);
  CHECK(est.k_exceed == 10);
  CHECK(est.eta_hat == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hill recovers the Pareto tail index 5 (eta = 0.2) at n = 1e5") {
  rng::Stream stream(97);
  std::vector<double> z(100000);
  for (double& v : z) v = std::pow(stream.uniform(), -0.2);  // survival z^-5
  const BivariateSample s = frechet_pair_sample(z, z);
  const TailDependenceEstimate est = hill_eta(s, 0.98);
  CHECK(std::abs(est.eta_hat - 0.2) < 0.01);
}

TEST_CASE("independent unit-Frechet pairs give eta near 1/2") {
  const BivariateSample s = generate({SynthFamily::independent_frechet, 0.0}, 100000, 99);
  const TailDependenceEstimate est = hill_eta(s, 0.98);
  CHECK(est.eta_hat > 0.45);
  CHECK(est.eta_hat < 0.55);
}

TEST_CASE("hill estimate is scale equivariant") {
  rng::Stream stream(103);
  std::vector<double> z(20000);
  for (double& v : z) v = std::pow(stream.uniform(), -0.35);
  const BivariateSample s = frechet_pair_sample(z, z);
  const TailDependenceEstimate a = hill_eta(s, 0.95);

  std::vector<double> scaled(z);
  for (double& v : scaled) v *= 37.5;
  const BivariateSample s2 = frechet_pair_sample(scaled, scaled);
  const TailDependenceEstimate b = hill_eta(s2, 0.95);
  CHECK(a.eta_hat == doctest::Approx(b.eta_hat).epsilon(1e-12));
  CHECK(b.threshold == doctest::Approx(37.5 * a.threshold).epsilon(1e-12));
}

TEST_CASE("the trace entry at the chosen k equals the headline estimate") {
  const BivariateSample s = generate({SynthFamily::independent_frechet, 0.0}, 20000, 105);
  const TailDependenceEstimate est = hill_eta(s, 0.98);
  bool found = false;
  for (const HillPoint& pt : est.trace) {
    if (pt.k == est.k_exceed) {
      CHECK(pt.eta == est.eta_hat);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("hill on the structure variable uses min(z1, z2)") {
  // z2 everywhere larger: the estimate must depend on z1 only.
  rng::Stream stream(107);
  std::vector<double> z1(5000), z2(5000);
  for (std::size_t i = 0; i < z1.size(); ++i) {
    z1[i] = std::pow(stream.uniform(), -0.25);
    z2[i] = z1[i] * 10.0;
  }
  const TailDependenceEstimate a = hill_eta(frechet_pair_sample(z1, z2), 0.95);
  const TailDependenceEstimate b = hill_eta(frechet_pair_sample(z1, z1), 0.95);
  CHECK(a.eta_hat == b.eta_hat);
}

TEST_CASE("too few exceedances for hill is fatal") {
  std::vector<double> z;
  for (int i = 0; i < 30; ++i) z.push_back(static_cast<double>(i + 1));
  const BivariateSample s = frechet_pair_sample(z, z);
  CHECK_THROWS_AS(hill_eta(s, 0.995), Error);
}

TEST_CASE("hill requires a frechet-scale sample") {
  BivariateSample s = generate({SynthFamily::gaussian_copula, 0.0, MarginKind::uniform},
                               1000, 11);
  CHECK_THROWS_AS(hill_eta(s, 0.98), Error);
}
