#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "curveflow/config.hpp"
#include "curveflow/experiment.hpp"

namespace {

// "50:4e-3,100:1e-3" -> [(50, 4e-3), (100, 1e-3)]
std::vector<std::pair<std::size_t, double>> parse_levels(const std::string& spec) {
  std::vector<std::pair<std::size_t, double>> levels;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', start), spec.size());
    const std::string item = spec.substr(start, end - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw curveflow::ParseError("levels: expected n:tau, got '" + item + "'");
    }
    try {
      std::size_t used_n = 0, used_tau = 0;
      const long n = std::stol(item.substr(0, colon), &used_n);
      const double tau = std::stod(item.substr(colon + 1), &used_tau);
      if (used_n != colon || used_tau != item.size() - colon - 1 || n < 4 || !(tau > 0.0)) {
        throw std::invalid_argument(item);
      }
      levels.emplace_back(static_cast<std::size_t>(n), tau);
    } catch (const std::exception&) {
      throw curveflow::ParseError("levels: malformed entry '" + item + "'");
    }
    start = end + 1;
  }
  if (levels.empty()) throw curveflow::ParseError("levels: empty specification");
  return levels;
}

std::vector<curveflow::RedistributionStrategy> parse_strategies(const std::string& spec,
                                                                double t_end) {
  std::vector<curveflow::RedistributionStrategy> strategies;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', start), spec.size());
    const std::string item = spec.substr(start, end - start);
    if (item == "zero" || item == "none") {
      strategies.push_back(curveflow::RedistributionStrategy::zero());
    } else if (item == "rll" || item == "relative") {
      strategies.push_back(curveflow::RedistributionStrategy::relative_local_length());
    } else if (item == "au" || item == "asymptotic") {
      strategies.push_back(
          curveflow::RedistributionStrategy::asymptotically_uniform(10.0 / t_end, 10.0));
    } else {
      throw curveflow::ParseError("strategies: unknown entry '" + item + "'");
    }
    start = end + 1;
  }
  return strategies;
}

void print_summary(const std::string& label, const curveflow::RunResult& result) {
  std::printf("%s%s at t = %.6g after %ld steps", label.c_str(),
              curveflow::to_string(result.termination), result.t_final, result.steps);
  if (result.resync_count > 0) std::printf(", %ld resyncs", result.resync_count);
  std::printf("\n");
  if (!result.note.empty()) std::printf("  %s\n", result.note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolution of closed planar curves by curvature-driven normal speed,\n"
               "with tangential grid-point redistribution"};
  app.require_subcommand(1);

  std::string config_path, out_dir, levels_spec;
  std::string strategies_spec = "zero,rll,au";
  bool svg = false;

  CLI::App* cmd_run = app.add_subcommand("run", "evolve one configured scenario");
  cmd_run->add_option("--config", config_path, "config JSON file")->required();
  cmd_run->add_option("--out", out_dir, "output directory")->required();
  cmd_run->add_flag("--svg", svg, "also write SVG frames");

  CLI::App* cmd_converge =
      app.add_subcommand("converge", "refinement study against a computable reference");
  cmd_converge->add_option("--config", config_path, "config JSON file")->required();
  cmd_converge->add_option("--levels", levels_spec, "comma list of n:tau, e.g. 50:4e-3,100:1e-3")
      ->required();
  cmd_converge->add_option("--out", out_dir, "output directory")->required();

  CLI::App* cmd_compare =
      app.add_subcommand("compare", "one scenario under several redistribution strategies");
  cmd_compare->add_option("--config", config_path, "config JSON file")->required();
  cmd_compare->add_option("--strategies", strategies_spec, "comma list of zero|rll|au");
  cmd_compare->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const curveflow::ExperimentConfig config = curveflow::parse_config_file(config_path);
    if (cmd_run->parsed()) {
      const curveflow::RunResult result = curveflow::run_scenario(config, out_dir, svg);
      print_summary("termination: ", result);
      std::printf("snapshots: %zu\nwrote %s\n", result.snapshots.size(), out_dir.c_str());
    } else if (cmd_converge->parsed()) {
      const auto levels = parse_levels(levels_spec);
      const curveflow::ConvergenceTable table =
          curveflow::convergence_study(config, levels, out_dir);
      std::printf("observable: %s\n%8s %12s %14s %8s\n", table.observable.c_str(), "n", "tau",
                  "error", "eoc");
      for (const curveflow::ConvergenceLevel& level : table.levels) {
        if (level.eoc) {
          std::printf("%8zu %12.4g %14.6e %8.3f\n", level.n, level.tau, level.error, *level.eoc);
        } else {
          std::printf("%8zu %12.4g %14.6e %8s\n", level.n, level.tau, level.error, "-");
        }
      }
      std::printf("wrote %s\n", out_dir.c_str());
    } else if (cmd_compare->parsed()) {
      const auto strategies = parse_strategies(strategies_spec, config.solver.t_end);
      const curveflow::StrategyComparison cmp =
          curveflow::compare_strategies(config, strategies, out_dir);
      for (const curveflow::StrategyRun& r : cmp.runs) print_summary(r.label + ": ", r.result);
      for (std::size_t i = 0; i < cmp.runs.size(); ++i) {
        for (std::size_t j = i + 1; j < cmp.runs.size(); ++j) {
          std::printf("hausdorff(%s, %s) = %.6g\n", cmp.runs[i].label.c_str(),
                      cmp.runs[j].label.c_str(), cmp.hausdorff[i][j]);
        }
      }
      std::printf("wrote %s\n", out_dir.c_str());
    }
  } catch (const curveflow::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const curveflow::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const curveflow::NoExactSolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const curveflow::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const curveflow::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
