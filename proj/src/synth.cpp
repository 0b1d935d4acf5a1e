#include "exiso/synth.hpp"

#include <cmath>

#include "exiso/error.hpp"
#include "exiso/rng.hpp"
#include "exiso/stats.hpp"

namespace exiso {

const char* to_string(SynthFamily f) {
  switch (f) {
    case SynthFamily::bivariate_logistic: return "bivariate_logistic";
    case SynthFamily::gaussian_copula: return "gaussian_copula";
    case SynthFamily::independent_frechet: return "independent_frechet";
  }
  return "?";
}

const char* to_string(MarginKind m) {
  return m == MarginKind::frechet_unit ? "frechet_unit" : "uniform";
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Positive alpha-stable draw with Laplace transform exp(-t^alpha)
// (Chambers-Mallows-Stuck form as used for logistic-type EV simulation,
// cf. Stephenson 2003).
double positive_stable(double alpha, rng::Stream& stream) {
  const double u = kPi * stream.uniform();
  const double w = stream.exponential();
  const double a = alpha;
  const double head = std::sin(a * u) / std::pow(std::sin(u), 1.0 / a);
  const double tail = std::pow(std::sin((1.0 - a) * u) / w, (1.0 - a) / a);
  return head * tail;
}

inline double frechet_from_uniform(double u) {
  // z = -1/log(u), u in (0,1)
  return -1.0 / std::log(u);
}

inline double uniform_from_frechet(double z) {
  double u = std::exp(-1.0 / z);
  if (u <= 0.0) u = 1e-300;
  if (u >= 1.0) u = 1.0 - 1e-16;
  return u;
}

// Unit-Frechet coordinate from a standard normal, computed through the
// survival function so extreme deviates do not collapse to infinity.
inline double frechet_from_normal(double n) {
  const double q = 0.5 * std::erfc(n * 0.70710678118654752440);  // P(N > n)
  return -1.0 / std::log1p(-q);
}

inline double uniform_from_normal(double n) {
  double u = normal_cdf(n);
  if (u <= 0.0) u = 1e-300;
  if (u >= 1.0) u = 1.0 - 1e-16;
  return u;
}

}  // namespace

BivariateSample generate(const SynthModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error("synth", "n must be at least 1");
  switch (model.family) {
    case SynthFamily::bivariate_logistic:
      if (!(model.parameter > 0.0 && model.parameter <= 1.0))
        throw Error("synth", "logistic dependence parameter must lie in (0,1]");
      break;
    case SynthFamily::gaussian_copula:
      if (!(model.parameter > -1.0 && model.parameter < 1.0))
        throw Error("synth", "copula correlation must lie in (-1,1)");
      break;
    case SynthFamily::independent_frechet:
      break;
  }

  rng::Stream stream(seed);
  BivariateSample sample;
  sample.labels = {"x1", "x2"};
  sample.scale =
      model.margins == MarginKind::frechet_unit ? ScaleTag::frechet : ScaleTag::original;
  sample.t.reserve(n);
  sample.x1.reserve(n);
  sample.x2.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    double z1 = 0.0, z2 = 0.0;  // unit-Frechet pair
    switch (model.family) {
      case SynthFamily::bivariate_logistic: {
        const double alpha = model.parameter;
        if (alpha == 1.0) {
          z1 = 1.0 / stream.exponential();
          z2 = 1.0 / stream.exponential();
        } else {
          const double s = positive_stable(alpha, stream);
          z1 = std::pow(s / stream.exponential(), alpha);
          z2 = std::pow(s / stream.exponential(), alpha);
        }
        break;
      }
      case SynthFamily::gaussian_copula: {
        const double rho = model.parameter;
        const double n1 = stream.normal();
        const double n2 = rho * n1 + std::sqrt(1.0 - rho * rho) * stream.normal();
        if (model.margins == MarginKind::frechet_unit) {
          sample.t.push_back(static_cast<std::int64_t>(i));
          sample.x1.push_back(frechet_from_normal(n1));
          sample.x2.push_back(frechet_from_normal(n2));
        } else {
          sample.t.push_back(static_cast<std::int64_t>(i));
          sample.x1.push_back(uniform_from_normal(n1));
          sample.x2.push_back(uniform_from_normal(n2));
        }
        continue;
      }
      case SynthFamily::independent_frechet: {
        z1 = 1.0 / stream.exponential();
        z2 = 1.0 / stream.exponential();
        break;
      }
    }
    sample.t.push_back(static_cast<std::int64_t>(i));
    if (model.margins == MarginKind::frechet_unit) {
      sample.x1.push_back(z1);
      sample.x2.push_back(z2);
    } else {
      sample.x1.push_back(uniform_from_frechet(z1));
      sample.x2.push_back(uniform_from_frechet(z2));
    }
  }
  return sample;
}

double brute_survival(const BivariateSample& sample, double x, double y) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (sample.x1[i] > x && sample.x2[i] > y) ++count;
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

}  // namespace exiso
