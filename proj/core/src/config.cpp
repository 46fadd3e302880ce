#include "curveflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace curveflow {

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError(field, "expected a number");
  return v.get<double>();
}

long as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ValidationError(field, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ValidationError(field, "expected a string");
  return v.get<std::string>();
}

const json& require(const json& obj, const char* key, const std::string& prefix) {
  if (!obj.contains(key)) throw ValidationError(prefix + key, "required key is missing");
  return obj.at(key);
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ValidationError(prefix + it.key(), "unknown key");
    }
  }
}

Scenario::Kind scenario_kind(const std::string& s, const std::string& field) {
  if (s == "circle") return Scenario::Kind::Circle;
  if (s == "ellipse") return Scenario::Kind::Ellipse;
  if (s == "nonuniform_ellipse") return Scenario::Kind::NonuniformEllipse;
  if (s == "dumbbell") return Scenario::Kind::Dumbbell;
  if (s == "star") return Scenario::Kind::Star;
  if (s == "file") return Scenario::Kind::File;
  throw ValidationError(field, "unknown scenario '" + s + "'");
}

// Reads the parameters of one scenario kind from src, recording in *allowed
// which keys the kind may use. "R0" is accepted alongside "r0".
void load_scenario_params(Scenario& sc, const json& src, const std::string& prefix,
                          std::vector<std::string>& allowed) {
  const auto number = [&](const char* key, double& out) {
    allowed.push_back(key);
    if (src.contains(key)) out = as_number(src.at(key), prefix + key);
  };
  switch (sc.kind) {
    case Scenario::Kind::Circle:
    case Scenario::Kind::Star:
      number("r0", sc.r0);
      allowed.push_back("R0");
      if (src.contains("R0")) sc.r0 = as_number(src.at("R0"), prefix + "R0");
      if (sc.kind == Scenario::Kind::Star) {
        allowed.push_back("petals");
        if (src.contains("petals")) {
          sc.petals = static_cast<int>(as_integer(src.at("petals"), prefix + "petals"));
        }
        number("amplitude", sc.amplitude);
      }
      break;
    case Scenario::Kind::Ellipse:
      number("a", sc.a);
      number("b", sc.b);
      break;
    case Scenario::Kind::NonuniformEllipse:
      number("a", sc.a);
      number("b", sc.b);
      number("gamma", sc.gamma);
      break;
    case Scenario::Kind::Dumbbell:
      number("delta", sc.delta);
      break;
    case Scenario::Kind::File:
      allowed.push_back("path");
      sc.path = as_string(require(src, "path", prefix), prefix + "path");
      break;
  }
}

ScalarField parse_field(const json& v, const std::string& field) {
  if (v.is_number()) return ScalarField::constant(v.get<double>());
  if (!v.is_object()) throw ValidationError(field, "expected a number or an object");
  const std::string prefix = field + ".";
  const std::string type = as_string(require(v, "type", prefix), prefix + "type");
  if (type == "constant") {
    reject_unknown(v, {"type", "value"}, prefix);
    return ScalarField::constant(as_number(require(v, "value", prefix), prefix + "value"));
  }
  if (type == "cosine") {
    reject_unknown(v, {"type", "base", "delta", "mode"}, prefix);
    const double base = as_number(require(v, "base", prefix), prefix + "base");
    const double delta = as_number(require(v, "delta", prefix), prefix + "delta");
    int mode = 1;
    if (v.contains("mode")) mode = static_cast<int>(as_integer(v.at("mode"), prefix + "mode"));
    return ScalarField::cosine(base, delta, mode);
  }
  if (type == "ramp") {
    reject_unknown(v, {"type", "base", "gx", "gy"}, prefix);
    const double base = as_number(require(v, "base", prefix), prefix + "base");
    double gx = 0.0, gy = 0.0;
    if (v.contains("gx")) gx = as_number(v.at("gx"), prefix + "gx");
    if (v.contains("gy")) gy = as_number(v.at("gy"), prefix + "gy");
    return ScalarField::ramp(base, gx, gy);
  }
  throw ValidationError(prefix + "type", "unknown field type '" + type + "'");
}

VelocityModel parse_model(const json& v) {
  const std::string field = "model";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "mcf" || s == "mean_curvature") return VelocityModel::mean_curvature();
    if (s == "power" || s == "power_law") return VelocityModel::power_law(1.0 / 3.0);
    if (s == "anisotropic") {
      return VelocityModel::anisotropic(ScalarField::constant(1.0), ScalarField::constant(0.0));
    }
    throw ValidationError(field, "unknown model '" + s + "'");
  }
  if (!v.is_object()) throw ValidationError(field, "expected a string or an object");
  const std::string prefix = "model.";
  const std::string type = as_string(require(v, "type", prefix), prefix + "type");
  if (type == "mcf" || type == "mean_curvature") {
    reject_unknown(v, {"type"}, prefix);
    return VelocityModel::mean_curvature();
  }
  if (type == "power" || type == "power_law") {
    reject_unknown(v, {"type", "sigma", "eps"}, prefix);
    double sigma = 1.0 / 3.0, eps = 1e-4;
    if (v.contains("sigma")) sigma = as_number(v.at("sigma"), prefix + "sigma");
    if (v.contains("eps")) eps = as_number(v.at("eps"), prefix + "eps");
    return VelocityModel::power_law(sigma, eps);
  }
  if (type == "anisotropic") {
    reject_unknown(v, {"type", "a", "c"}, prefix);
    ScalarField a = ScalarField::constant(1.0);
    ScalarField c = ScalarField::constant(0.0);
    if (v.contains("a")) a = parse_field(v.at("a"), prefix + "a");
    if (v.contains("c")) c = parse_field(v.at("c"), prefix + "c");
    return VelocityModel::anisotropic(a, c);
  }
  throw ValidationError(prefix + "type", "unknown model '" + type + "'");
}

RedistributionStrategy parse_strategy(const json& v, double t_end) {
  const std::string field = "strategy";
  const auto au_default = [&](double kappa1, double kappa2) {
    return RedistributionStrategy::asymptotically_uniform(kappa1, kappa2);
  };
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "zero" || s == "none") return RedistributionStrategy::zero();
    if (s == "rll" || s == "relative" || s == "relative_local_length") {
      return RedistributionStrategy::relative_local_length();
    }
    if (s == "au" || s == "asymptotic" || s == "asymptotically_uniform") {
      return au_default(10.0 / t_end, 10.0);
    }
    throw ValidationError(field, "unknown strategy '" + s + "'");
  }
  if (!v.is_object()) throw ValidationError(field, "expected a string or an object");
  const std::string prefix = "strategy.";
  const std::string type = as_string(require(v, "type", prefix), prefix + "type");
  if (type == "zero" || type == "none") {
    reject_unknown(v, {"type"}, prefix);
    return RedistributionStrategy::zero();
  }
  if (type == "rll" || type == "relative" || type == "relative_local_length") {
    reject_unknown(v, {"type"}, prefix);
    return RedistributionStrategy::relative_local_length();
  }
  if (type == "au" || type == "asymptotic" || type == "asymptotically_uniform") {
    reject_unknown(v, {"type", "kappa1", "kappa2"}, prefix);
    double kappa1 = 10.0 / t_end, kappa2 = 10.0;
    if (v.contains("kappa1")) kappa1 = as_number(v.at("kappa1"), prefix + "kappa1");
    if (v.contains("kappa2")) kappa2 = as_number(v.at("kappa2"), prefix + "kappa2");
    return au_default(kappa1, kappa2);
  }
  throw ValidationError(prefix + "type", "unknown strategy '" + type + "'");
}

json field_echo(const ScalarField& f) {
  switch (f.kind) {
    case FieldKind::Constant: return {{"type", "constant"}, {"value", f.base}};
    case FieldKind::Cosine:
      return {{"type", "cosine"}, {"base", f.base}, {"delta", f.delta}, {"mode", f.mode}};
    case FieldKind::Ramp:
      return {{"type", "ramp"}, {"base", f.base}, {"gx", f.gx}, {"gy", f.gy}};
  }
  return {};
}

json scenario_echo(const Scenario& sc) {
  json j{{"type", sc.name()}};
  switch (sc.kind) {
    case Scenario::Kind::Circle: j["r0"] = sc.r0; break;
    case Scenario::Kind::Ellipse:
      j["a"] = sc.a;
      j["b"] = sc.b;
      break;
    case Scenario::Kind::NonuniformEllipse:
      j["a"] = sc.a;
      j["b"] = sc.b;
      j["gamma"] = sc.gamma;
      break;
    case Scenario::Kind::Dumbbell: j["delta"] = sc.delta; break;
    case Scenario::Kind::Star:
      j["r0"] = sc.r0;
      j["petals"] = sc.petals;
      j["amplitude"] = sc.amplitude;
      break;
    case Scenario::Kind::File: j["path"] = sc.path; break;
  }
  return j;
}

json model_echo(const VelocityModel& m) {
  switch (m.kind()) {
    case ModelKind::MeanCurvature: return {{"type", "mcf"}};
    case ModelKind::PowerLaw:
      return {{"type", "power"}, {"sigma", m.sigma()}, {"eps", m.regularization()}};
    case ModelKind::AnisotropicLinear:
      return {{"type", "anisotropic"},
              {"a", field_echo(m.coefficient())},
              {"c", field_echo(m.forcing())}};
  }
  return {};
}

json strategy_echo(const RedistributionStrategy& s) {
  switch (s.kind) {
    case RedistributionStrategy::Kind::Zero: return {{"type", "zero"}};
    case RedistributionStrategy::Kind::RelativeLocalLength: return {{"type", "rll"}};
    case RedistributionStrategy::Kind::AsymptoticallyUniform:
      return {{"type", "au"}, {"kappa1", s.kappa1}, {"kappa2", s.kappa2}};
  }
  return {};
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config: the top level must be a JSON object");

  ExperimentConfig cfg;
  std::vector<std::string> allowed = {"scenario", "model",          "strategy",   "n",   "tau",
                                      "tau_ratio", "t_end", "snapshot_every", "resync_tol", "stop"};

  // Scenario first: a string shorthand moves its parameters to the top level.
  const json& sc = require(root, "scenario", "");
  if (sc.is_string()) {
    cfg.scenario.kind = scenario_kind(sc.get<std::string>(), "scenario");
    load_scenario_params(cfg.scenario, root, "", allowed);
  } else if (sc.is_object()) {
    std::vector<std::string> sc_allowed = {"type"};
    cfg.scenario.kind =
        scenario_kind(as_string(require(sc, "type", "scenario."), "scenario.type"), "scenario.type");
    load_scenario_params(cfg.scenario, sc, "scenario.", sc_allowed);
    reject_unknown(sc, sc_allowed, "scenario.");
  } else {
    throw ValidationError("scenario", "expected a string or an object");
  }

  cfg.solver.t_end = as_number(require(root, "t_end", ""), "t_end");
  cfg.solver.model = parse_model(require(root, "model", ""));
  cfg.solver.strategy = parse_strategy(require(root, "strategy", ""), cfg.solver.t_end);

  const long n = as_integer(require(root, "n", ""), "n");
  if (n < 4) throw ValidationError("n", "need at least 4 grid points");
  cfg.solver.n = static_cast<std::size_t>(n);

  if (root.contains("tau")) cfg.solver.tau = as_number(root.at("tau"), "tau");
  if (root.contains("tau_ratio")) {
    cfg.solver.tau_ratio = as_number(root.at("tau_ratio"), "tau_ratio");
  }
  if (!root.contains("tau") && cfg.solver.tau_ratio <= 0.0) {
    throw ValidationError("tau", "set tau or a positive tau_ratio");
  }
  if (!root.contains("tau")) cfg.solver.tau = 0.0;

  if (root.contains("snapshot_every")) {
    cfg.solver.snapshot_every = as_integer(root.at("snapshot_every"), "snapshot_every");
  }
  if (root.contains("resync_tol")) {
    cfg.solver.resync_tolerance = as_number(root.at("resync_tol"), "resync_tol");
  }
  if (root.contains("stop")) {
    const json& stop = root.at("stop");
    if (!stop.is_object()) throw ValidationError("stop", "expected an object");
    reject_unknown(stop, {"L_min", "k_max", "ratio_max"}, "stop.");
    if (stop.contains("L_min")) {
      cfg.solver.stop.min_length = as_number(stop.at("L_min"), "stop.L_min");
    }
    if (stop.contains("k_max")) {
      cfg.solver.stop.max_curvature = as_number(stop.at("k_max"), "stop.k_max");
    }
    if (stop.contains("ratio_max")) {
      cfg.solver.stop.max_mesh_ratio = as_number(stop.at("ratio_max"), "stop.ratio_max");
    }
  }

  reject_unknown(root, allowed, "");
  cfg.scenario.validate();
  cfg.solver.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_echo(const ExperimentConfig& config) {
  json j;
  j["scenario"] = scenario_echo(config.scenario);
  j["model"] = model_echo(config.solver.model);
  j["strategy"] = strategy_echo(config.solver.strategy);
  j["n"] = config.solver.n;
  j["tau"] = config.solver.tau;
  j["tau_ratio"] = config.solver.tau_ratio;
  j["t_end"] = config.solver.t_end;
  j["snapshot_every"] = config.solver.snapshot_every;
  j["resync_tol"] = config.solver.resync_tolerance;
  j["stop"] = {{"L_min", config.solver.stop.min_length},
               {"k_max", config.solver.stop.max_curvature},
               {"ratio_max", config.solver.stop.max_mesh_ratio}};
  return j.dump(2) + "\n";
}

}  // namespace curveflow
