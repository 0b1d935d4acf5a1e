#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exiso/isoline.hpp"
#include "exiso/pipeline.hpp"
#include "exiso/sample.hpp"

namespace exiso {

// B(x) = number of observations >= x componentwise (closed inequality).
std::size_t exceedance_count(const BivariateSample& sample, double x, double y);

struct BinomialInterval {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Smallest integer interval [n1, n2] with Binomial(n, p) mass >= coverage;
// ties in width are broken toward the lower interval.
BinomialInterval binomial_interval(std::size_t n, double p, double coverage = 0.95);

struct ProbePoint {
  std::size_t vertex_index = 0;
  double x = 0.0;
  double y = 0.0;
  std::size_t count = 0;
  double emp_prob = 0.0;
  bool inside = false;
};

// Empirical-exceedance check of an isoline at probe points along the
// polyline, compared against the smallest >= coverage binomial interval.
struct DiagnosticReport {
  double level = 0.0;
  std::size_t n = 0;  // sample size behind the counts
  BinomialInterval interval{};
  double lower = 0.0;  // n1 / n
  double upper = 0.0;  // n2 / n
  std::vector<ProbePoint> probes;
  std::string note;  // dependence caveat

  std::size_t inside_count() const;
};

// Probes are taken at equally spaced vertex indices, excluding endpoints
// flagged as clipped. A polyline with no usable vertices is fatal.
DiagnosticReport diagnostic_report(const BivariateSample& sample, const Isoline& isoline,
                                   std::size_t n_probes = 20, double coverage = 0.95);

struct BootstrapResult {
  double level = 0.0;
  std::size_t block_length = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
  std::vector<std::size_t> replicate_ids;  // parallel to isolines
  std::vector<Isoline> isolines;           // original scale, level = `level`
};

// Builds a length-n resample per replicate from blocks of length b starting
// at uniform indices (circular wraparound), reruns the full pipeline on it,
// and records the isoline at `level`. Replicates whose pipeline errors are
// counted and skipped. Deterministic for a given seed under any thread
// count (per-replicate substreams).
BootstrapResult block_bootstrap(const BivariateSample& sample, std::size_t block_length,
                                std::size_t iterations, const PipelineConfig& config,
                                double level, std::uint64_t seed, unsigned threads = 0);

// The resample construction alone (exposed for tests).
BivariateSample block_resample(const BivariateSample& sample, std::size_t block_length,
                               std::uint64_t master_seed, std::size_t replicate_index);

}  // namespace exiso
