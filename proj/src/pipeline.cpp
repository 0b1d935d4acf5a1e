#include "exiso/pipeline.hpp"

#include <array>
#include <cmath>

#include "exiso/error.hpp"

namespace exiso {

const char* to_string(ModeChoice mode) {
  switch (mode) {
    case ModeChoice::ad: return "ad";
    case ModeChoice::ai: return "ai";
    case ModeChoice::automatic: return "auto";
  }
  return "?";
}

PipelineResult run_pipeline(const BivariateSample& sample, const PipelineConfig& config) {
  sample.validate();
  PipelineResult result;

  result.mt1 = fit_marginal(sample.x1, config.marginal);
  result.mt2 = fit_marginal(sample.x2, config.marginal);

  const SurvivalGrid grid =
      survival_grid(sample, config.bandwidths, config.grid, config.threads);
  for (const auto& w : grid.warnings) result.warnings.push_back(w);
  result.base = extract_isoline(grid, config.p_base);

  DependenceMode mode;
  switch (config.mode) {
    case ModeChoice::ad:
      mode = DependenceMode::ad;
      break;
    case ModeChoice::ai:
      mode = DependenceMode::ai;
      break;
    case ModeChoice::automatic: {
      const std::array<double, 1> u{0.98};
      const ChiCurve curve = chi_curve(sample, u);
      const double chi = curve.chi[0];
      result.chi_at_auto = chi;
      mode = (std::isfinite(chi) && chi < 0.05) ? DependenceMode::ai : DependenceMode::ad;
      result.warnings.push_back(
          "mode resolved automatically from chi(0.98); inspect the full chi curve");
      break;
    }
  }
  result.resolved_mode = mode;

  ProjectionConfig proj;
  proj.p_base = config.p_base;
  proj.p_proj = config.p_proj;
  proj.mode = mode;
  proj.beta = config.beta;
  if (mode == DependenceMode::ai) {
    const BivariateSample frechet = transform_sample(sample, result.mt1, result.mt2);
    result.eta = hill_eta(frechet, config.eta_quantile);
    proj.eta_hat = result.eta->eta_hat;
  }

  if (!config.p_proj.empty())
    result.projected = project_pipeline(result.base, result.mt1, result.mt2, proj);
  return result;
}

}  // namespace exiso
