#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exiso/marginal.hpp"
#include "exiso/project.hpp"
#include "exiso/surface.hpp"
#include "exiso/taildep.hpp"

namespace exiso {

enum class ModeChoice { ad, ai, automatic };

const char* to_string(ModeChoice mode);

// Everything needed to go from a raw sample to projected isolines. The
// block bootstrap re-runs this verbatim on each resample.
struct PipelineConfig {
  MarginalOptions marginal{};
  std::optional<std::pair<double, double>> bandwidths;  // empty = nrd per coordinate
  GridSpec grid{};
  double p_base = 0.01;
  std::vector<double> p_proj;
  ModeChoice mode = ModeChoice::ad;
  double beta = 200.0;
  double eta_quantile = 0.98;
  unsigned threads = 0;  // 0 = hardware default
};

struct PipelineResult {
  MarginalTransform mt1, mt2;
  Isoline base;  // original scale, level p_base
  DependenceMode resolved_mode = DependenceMode::ad;
  std::optional<TailDependenceEstimate> eta;  // present in ai mode
  std::optional<double> chi_at_auto;          // present when mode was automatic
  std::vector<Isoline> projected;             // original scale, one per p_proj
  std::vector<std::string> warnings;
};

// Fit marginals, estimate the base isoline at p_base, resolve the
// dependence mode (automatic: ai when the rank-based chi at u = 0.98 falls
// below 0.05), estimate eta when needed, and project the ladder.
PipelineResult run_pipeline(const BivariateSample& sample, const PipelineConfig& config);

}  // namespace exiso
