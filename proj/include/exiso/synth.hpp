#pragma once

#include <cstdint>

#include "exiso/sample.hpp"

namespace exiso {

enum class SynthFamily { bivariate_logistic, gaussian_copula, independent_frechet };
enum class MarginKind { frechet_unit, uniform };

const char* to_string(SynthFamily f);
const char* to_string(MarginKind m);

// Simulation model with known tail-dependence behavior, used as an oracle:
// the logistic family is asymptotically dependent with chi = 2 - 2^alpha,
// the Gaussian copula (|rho| < 1) and independent margins are asymptotically
// independent.
struct SynthModel {
  SynthFamily family = SynthFamily::independent_frechet;
  double parameter = 0.5;  // logistic alpha in (0,1] or copula rho in (-1,1)
  MarginKind margins = MarginKind::frechet_unit;
};

// Deterministic given the seed; time index is synthetic 0..n-1.
BivariateSample generate(const SynthModel& model, std::size_t n, std::uint64_t seed);

// Exact empirical joint survival fraction #(x1_t > x and x2_t > y)/n, with
// strict inequalities (the h -> 0 limit of the kernel estimator). Reference
// for every smoothed or optimized survival path.
double brute_survival(const BivariateSample& sample, double x, double y);

}  // namespace exiso
