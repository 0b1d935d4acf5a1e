#include "exiso/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "exiso/error.hpp"
#include "exiso/rng.hpp"

namespace exiso {

std::size_t exceedance_count(const BivariateSample& sample, double x, double y) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (sample.x1[i] >= x && sample.x2[i] >= y) ++count;
  return count;
}

namespace {

// Binomial pmf materialized around the mode; outcomes further out carry
// negligible mass for any practical coverage level.
struct BinomialPmf {
  std::size_t lo = 0;          // first materialized outcome
  std::vector<double> probs;   // probs[k - lo]

  double at(std::size_t k) const {
    if (k < lo || k >= lo + probs.size()) return 0.0;
    return probs[k - lo];
  }
};

BinomialPmf binomial_pmf_window(std::size_t n, double p) {
  const double q = 1.0 - p;
  const auto mode = static_cast<std::size_t>(
      std::min(static_cast<double>(n), std::floor((static_cast<double>(n) + 1.0) * p)));
  // log pmf at the mode via lgamma, then extend by the ratio recurrence.
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(mode);
  double log_pm = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) -
                  std::lgamma(nd - md + 1.0);
  if (mode > 0) log_pm += md * std::log(p);
  if (mode < n) log_pm += (nd - md) * std::log(q);
  const double pm = std::exp(log_pm);
  const double cutoff = pm * 1e-18;

  std::vector<double> down, up;
  double v = pm;
  std::size_t k = mode;
  while (k > 0) {
    // pmf(k-1) = pmf(k) * k / (n-k+1) * q/p
    v *= static_cast<double>(k) / (nd - static_cast<double>(k) + 1.0) * q / p;
    --k;
    if (v < cutoff && down.size() > 2) break;
    down.push_back(v);
  }

  BinomialPmf pmf;
  pmf.lo = mode - down.size();
  pmf.probs.assign(down.rbegin(), down.rend());
  pmf.probs.push_back(pm);
  v = pm;
  k = mode;
  while (k < n) {
    // pmf(k+1) = pmf(k) * (n-k)/(k+1) * p/q
    v *= (nd - static_cast<double>(k)) / (static_cast<double>(k) + 1.0) * p / q;
    ++k;
    if (v < cutoff && k > mode + 2) break;
    pmf.probs.push_back(v);
  }
  return pmf;
}

}  // namespace

BinomialInterval binomial_interval(std::size_t n, double p, double coverage) {
  if (n < 1) throw Error("diagnose", "binomial interval needs n >= 1");
  if (!(p > 0.0 && p < 1.0)) throw Error("diagnose", "p must lie in (0,1)");
  if (!(coverage > 0.0 && coverage < 1.0))
    throw Error("diagnose", "coverage must lie in (0,1)");

  const BinomialPmf pmf = binomial_pmf_window(n, p);

  // Greedy highest-mass expansion from the mode; the binomial pmf is
  // log-concave, so this yields the maximal-mass window of every width.
  std::size_t a = 0, b = 0;
  {
    std::size_t mode = pmf.lo;
    for (std::size_t k = 0; k < pmf.probs.size(); ++k)
      if (pmf.probs[k] > pmf.at(mode)) mode = pmf.lo + k;
    a = b = mode;
  }
  double mass = pmf.at(a);
  while (mass < coverage) {
    const double below = a > 0 ? pmf.at(a - 1) : -1.0;
    const double above = b < n ? pmf.at(b + 1) : -1.0;
    if (below < 0.0 && above < 0.0) break;  // full support reached
    if (below >= above) {  // ties extend toward the lower interval
      --a;
      mass += pmf.at(a);
    } else {
      ++b;
      mass += pmf.at(b);
    }
  }

  // Among equal-width windows with mass >= coverage, take the lowest one.
  while (a > 0) {
    const double shifted = mass + pmf.at(a - 1) - pmf.at(b);
    if (shifted < coverage) break;
    --a;
    --b;
    mass = shifted;
  }
  return {a, b};
}

std::size_t DiagnosticReport::inside_count() const {
  std::size_t c = 0;
  for (const auto& probe : probes)
    if (probe.inside) ++c;
  return c;
}

DiagnosticReport diagnostic_report(const BivariateSample& sample, const Isoline& isoline,
                                   std::size_t n_probes, double coverage) {
  if (n_probes < 3) throw Error("diagnose", "need at least 3 probes");
  if (sample.scale != isoline.scale)
    throw Error("diagnose", "sample and isoline are on different scales");

  // Probes at equally spaced vertex indices, excluding clipped endpoints.
  std::size_t lo = isoline.clipped_start ? 1 : 0;
  std::size_t hi = isoline.size() - (isoline.clipped_end ? 2 : 1);
  if (lo >= isoline.size() || hi >= isoline.size() || lo > hi)
    throw Error("diagnose", "isoline is fully clipped; nothing to probe");

  DiagnosticReport report;
  report.level = isoline.level;
  report.n = sample.size();
  report.interval = binomial_interval(sample.size(), isoline.level, coverage);
  report.lower = static_cast<double>(report.interval.n1) / static_cast<double>(sample.size());
  report.upper = static_cast<double>(report.interval.n2) / static_cast<double>(sample.size());
  report.note =
      "probes share overlapping exceedance regions, so neighboring empirical "
      "probabilities are dependent; the interval treats each probe alone";

  std::vector<std::size_t> indices;
  if (hi == lo) {
    indices.push_back(lo);
  } else {
    for (std::size_t k = 0; k < n_probes; ++k) {
      const double frac =
          static_cast<double>(k) / static_cast<double>(n_probes - 1);
      indices.push_back(
          lo + static_cast<std::size_t>(std::llround(frac * static_cast<double>(hi - lo))));
    }
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  }

  for (std::size_t idx : indices) {
    ProbePoint probe;
    probe.vertex_index = idx;
    probe.x = isoline.points[idx].x;
    probe.y = isoline.points[idx].y;
    probe.count = exceedance_count(sample, probe.x, probe.y);
    probe.emp_prob = static_cast<double>(probe.count) / static_cast<double>(sample.size());
    probe.inside = probe.count >= report.interval.n1 && probe.count <= report.interval.n2;
    report.probes.push_back(probe);
  }
  return report;
}

BivariateSample block_resample(const BivariateSample& sample, std::size_t block_length,
                               std::uint64_t master_seed, std::size_t replicate_index) {
  const std::size_t n = sample.size();
  if (block_length < 1 || block_length > n)
    throw Error("diagnose", "block length must lie in [1, n]");

  rng::Stream stream = rng::Stream::substream(master_seed, replicate_index);
  BivariateSample out;
  out.labels = sample.labels;
  out.scale = sample.scale;
  out.x1.reserve(n);
  out.x2.reserve(n);
  out.t.reserve(n);
  while (out.x1.size() < n) {
    const auto start = static_cast<std::size_t>(stream.uniform() * static_cast<double>(n));
    for (std::size_t offset = 0; offset < block_length && out.x1.size() < n; ++offset) {
      const std::size_t i = (start + offset) % n;  // circular wraparound
      out.t.push_back(static_cast<std::int64_t>(out.x1.size()));
      out.x1.push_back(sample.x1[i]);
      out.x2.push_back(sample.x2[i]);
    }
  }
  return out;
}

BootstrapResult block_bootstrap(const BivariateSample& sample, std::size_t block_length,
                                std::size_t iterations, const PipelineConfig& config,
                                double level, std::uint64_t seed, unsigned threads) {
  if (iterations < 1) throw Error("diagnose", "bootstrap needs at least 1 iteration");
  if (block_length < 1 || block_length > sample.size())
    throw Error("diagnose", "block length must lie in [1, n]");
  if (!(level > 0.0 && level <= config.p_base))
    throw Error("diagnose", "bootstrap level must lie in (0, p_base]");

  PipelineConfig replicate_config = config;
  replicate_config.p_proj = {level};
  replicate_config.threads = 1;  // parallelism is across replicates

  BootstrapResult result;
  result.level = level;
  result.block_length = block_length;
  result.iterations = iterations;
  result.seed = seed;

  std::vector<std::optional<Isoline>> outcomes(iterations);
  std::vector<char> failed(iterations, 0);

  auto run_replicate = [&](std::size_t r) {
    try {
      const BivariateSample resample = block_resample(sample, block_length, seed, r);
      const PipelineResult pr = run_pipeline(resample, replicate_config);
      outcomes[r] = pr.projected.front();
    } catch (const std::exception&) {
      failed[r] = 1;
    }
  };

  unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  if (n_threads == 1) {
    for (std::size_t r = 0; r < iterations; ++r) run_replicate(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < iterations; r += n_threads) run_replicate(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t r = 0; r < iterations; ++r) {
    if (failed[r] || !outcomes[r]) {
      ++result.failures;
      continue;
    }
    result.replicate_ids.push_back(r);
    result.isolines.push_back(std::move(*outcomes[r]));
  }
  return result;
}

}  // namespace exiso
