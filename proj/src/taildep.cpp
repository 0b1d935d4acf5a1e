#include "exiso/taildep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exiso/error.hpp"

namespace exiso {

namespace {

// Ranks with the max-tie convention: rank(x) = #{values <= x}.
std::vector<std::size_t> max_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = j + 1;
    i = j + 1;
  }
  return rank;
}

}  // namespace

std::vector<double> default_u_grid() {
  std::vector<double> u;
  for (int k = 0; k <= 39; ++k) u.push_back(0.80 + 0.005 * k);  // 0.800 .. 0.995
  return u;
}

ChiCurve chi_curve(const BivariateSample& sample, std::span<const double> u_grid) {
  const std::size_t n = sample.size();
  if (n < 20) throw Error("taildep", "chi curve needs at least 20 observations");
  for (std::size_t i = 1; i < u_grid.size(); ++i)
    if (!(u_grid[i] > u_grid[i - 1]))
      throw Error("taildep", "u grid must be strictly increasing");
  for (double u : u_grid)
    if (!(u > 0.0 && u < 1.0)) throw Error("taildep", "u levels must lie in (0,1)");

  const auto r1 = max_ranks(sample.x1);
  const auto r2 = max_ranks(sample.x2);
  const double denom_n = static_cast<double>(n + 1);

  ChiCurve curve;
  curve.u.assign(u_grid.begin(), u_grid.end());
  for (double u : u_grid) {
    std::size_t joint = 0, cond = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool e2 = static_cast<double>(r2[i]) / denom_n > u;
      if (!e2) continue;
      ++cond;
      if (static_cast<double>(r1[i]) / denom_n > u) ++joint;
    }
    curve.joint_count.push_back(joint);
    curve.cond_count.push_back(cond);
    curve.chi.push_back(cond == 0 ? std::numeric_limits<double>::quiet_NaN()
                                  : static_cast<double>(joint) / static_cast<double>(cond));
  }
  return curve;
}

TailDependenceEstimate hill_eta(const BivariateSample& sample, double threshold_quantile) {
  if (sample.scale != ScaleTag::frechet)
    throw Error("taildep", "hill_eta requires a frechet-scale sample");
  if (!(threshold_quantile > 0.0 && threshold_quantile < 1.0))
    throw Error("taildep", "threshold quantile must lie in (0,1)");

  const std::size_t n = sample.size();
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::min(sample.x1[i], sample.x2[i]);
  std::sort(z.begin(), z.end());

  // Order-statistic threshold u = z_(ceil(q n)); the exceedances are the
  // values strictly above it, which makes the headline estimate equal to the
  // Hill-plot trace entry at the chosen k.
  const auto m = static_cast<std::size_t>(
      std::ceil(threshold_quantile * static_cast<double>(n)));
  if (m == 0 || m >= n) throw Error("taildep", "threshold quantile leaves no exceedances");
  const double u = z[m - 1];
  if (!(u > 0.0)) throw Error("taildep", "threshold is not positive");

  std::size_t k = 0;
  while (k < n && z[n - 1 - k] > u) ++k;
  if (k < 10)
    throw Error("taildep", "fewer than 10 exceedances above the Hill threshold");

  const auto hill_at = [&](std::size_t kk) {
    const double thold = z[n - 1 - kk];  // (kk+1)-th largest order statistic
    double sum = 0.0;
    for (std::size_t i = 0; i < kk; ++i) sum += std::log(z[n - 1 - i] / thold);
    return sum / static_cast<double>(kk);
  };

  TailDependenceEstimate est;
  est.threshold = u;
  est.threshold_quantile = threshold_quantile;
  est.k_exceed = k;
  double eta = hill_at(k);
  if (!(eta > 0.0))
    throw Error("taildep", "degenerate Hill estimate (all exceedances tie the threshold)");
  if (eta > 1.0) {
    est.clamped = true;
    eta = 1.0;
  }
  est.eta_hat = eta;

  // Trace for the Hill plot: k from 10 up to the 0.90-quantile exceedance
  // count.
  const auto m90 = static_cast<std::size_t>(std::ceil(0.90 * static_cast<double>(n)));
  std::size_t k_max = 0;
  while (k_max < n && z[n - 1 - k_max] > z[m90 - 1]) ++k_max;
  for (std::size_t kk = 10; kk <= std::max<std::size_t>(k_max, k); ++kk)
    est.trace.push_back({kk, hill_at(kk)});
  return est;
}

}  // namespace exiso
