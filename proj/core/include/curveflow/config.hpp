#pragma once

#include <string>

#include "curveflow/scenario.hpp"
#include "curveflow/solver.hpp"

namespace curveflow {

struct ExperimentConfig {
  Scenario scenario;
  SolverConfig solver;
};

// Strict JSON config parsing: unknown keys are rejected, value errors name
// the offending field, syntax errors carry the byte position. Shorthand
// string forms ("scenario": "circle", "model": "mcf", "strategy": "rll") are
// accepted; scenario parameters may then sit at the top level. Asymptotic
// strategy gains kappa1 = 10/t_end, kappa2 = 10 when omitted.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical JSON echo of a resolved config; parsing it again reproduces the
// same configuration.
std::string config_echo(const ExperimentConfig& config);

}  // namespace curveflow
