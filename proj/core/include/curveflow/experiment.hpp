#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curveflow/config.hpp"
#include "curveflow/solver.hpp"

namespace curveflow {

// Runs one configured scenario and writes a self-contained output directory:
// manifest.json (config echo, snapshot index, termination, diagnostics
// series), snap_<k>.csv per snapshot, metrics.csv, the initial and final
// curve in plain x,y CSV, and frames/*.svg when requested. Outputs are
// deterministic for a fixed config.
RunResult run_scenario(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                       bool write_svg = false);

struct ConvergenceLevel {
  std::size_t n = 0;
  double tau = 0.0;
  double error = 0.0;
  std::optional<double> eoc;  // empty for the first level or when undefined
};

struct ConvergenceTable {
  std::string observable;
  std::vector<ConvergenceLevel> levels;
};

// Refinement study against a scenario with a computable reference: the
// radius of a shrinking circle (mean curvature or power law, via a
// high-resolution ODE reference) or the axis ratio of an ellipse under the
// power law. Other combinations throw NoExactSolution. Levels run
// concurrently; the experimental order of convergence between consecutive
// levels is log(e_prev/e)/log(h_prev/h), left undefined when levels repeat.
ConvergenceTable convergence_study(const ExperimentConfig& base,
                                   std::span<const std::pair<std::size_t, double>> levels,
                                   const std::filesystem::path& out_dir);

struct StrategyRun {
  std::string label;
  RunResult result;
};

struct StrategyComparison {
  std::vector<StrategyRun> runs;
  // hausdorff[i][j]: distance between final curves of runs i and j.
  std::vector<std::vector<double>> hausdorff;
};

// Same scenario under several redistribution strategies, run concurrently,
// one output directory per strategy plus comparison.json.
StrategyComparison compare_strategies(const ExperimentConfig& base,
                                      std::span<const RedistributionStrategy> strategies,
                                      const std::filesystem::path& out_dir);

std::string strategy_label(const RedistributionStrategy& strategy);

}  // namespace curveflow
