#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curveflow/geometry.hpp"
#include "curveflow/redistribution.hpp"
#include "curveflow/velocity.hpp"

namespace curveflow {

struct StopCriteria {
  double min_length = 1e-3;
  double max_curvature = 1e4;
  double max_mesh_ratio = 10.0;  // longest/shortest segment of the actual polygon
};

struct SolverConfig {
  std::size_t n = 200;
  double tau = 1e-4;
  // When positive, the step is rescaled each time so that
  // tau * max(dbeta/dk) / min(h)^2 stays at this ratio.
  double tau_ratio = 0.0;
  double t_end = 1.0;
  VelocityModel model = VelocityModel::mean_curvature();
  RedistributionStrategy strategy = RedistributionStrategy::zero();
  StopCriteria stop;
  // Relative L2 gap between evolved curvature and the curvature of the
  // evolved polygon beyond which the intrinsic fields are rebuilt from
  // positions (positions are the master variable).
  double resync_tolerance = 5e-2;
  // Snapshot cadence in steps; 0 records at ~50 evenly spaced times.
  long snapshot_every = 0;

  void validate() const;  // throws ValidationError naming the offending field
};

// Evolving quantities at one instant. curvature/tangent_angle live on nodes,
// local_length on segments; position is the master copy of the curve.
// tangent_angle is unwrapped: the closing jump equals 2*pi*turning_number.
struct IntrinsicState {
  double t = 0.0;
  std::vector<Vec2> position;
  std::vector<double> curvature;
  std::vector<double> tangent_angle;
  std::vector<double> local_length;
  int turning_number = 1;

  std::size_t size() const { return position.size(); }
  double length() const;  // from local_length
};

IntrinsicState initial_state(const PlanarCurve& curve);

struct StepStats {
  double tau_used = 0.0;
  bool resynced = false;
  long nondominant_solves = 0;
};

// One semi-implicit step: explicit evaluation of speeds and the tangential
// velocity, exact update of the local length ODE, then one cyclic
// tridiagonal solve each for the tangent angle, the curvature and both
// position components, diffusion implicit and transport upwinded explicit.
// The state is only committed when every stage succeeded. Throws
// MeshCollapse, CurvatureBlowup, SingularMatrix, NonFiniteState.
StepStats step(IntrinsicState& state, const SolverConfig& config);
StepStats step(IntrinsicState& state, const SolverConfig& config, double tau);

// Exact one-step solution of d(g)/dt = -shrink*g + (total - g)*rate with
// frozen coefficients; stays positive for rate >= 0.
double advance_local_length(double g, double shrink, double total, double rate, double tau);

struct Snapshot {
  long step_index = 0;
  double t = 0.0;
  std::vector<Vec2> position;
  std::vector<double> curvature;
  std::vector<double> tangent_angle;
  std::vector<double> local_length;
  std::vector<double> tangential_speed;
};

enum class Termination {
  ReachedEnd,
  LengthBelowMin,
  CurvatureBlowup,
  MeshRatioAlarm,
  MeshCollapse,
};
const char* to_string(Termination cause);

struct DiagnosticsRow {
  double t = 0.0;
  double length = 0.0;
  double area = 0.0;
  double max_curvature = 0.0;
  double mesh_ratio = 1.0;
  double dispersion = 0.0;
  double stdev = 0.0;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRow> diagnostics;  // one row per snapshot
  Termination termination = Termination::ReachedEnd;
  double t_final = 0.0;
  long steps = 0;
  long resync_count = 0;
  long nondominant_solves = 0;
  std::string note;
};

// Steps from t = 0 until t_end or a stop criterion fires. Mesh quality and
// length checks run against the actual polygon every step; snapshots carry
// the full state plus the tangential speed used at that instant. Physical
// terminations (collapse, blowup) are reported, solver faults are rethrown
// annotated with step and time.
RunResult run(const PlanarCurve& initial, const SolverConfig& config);

Snapshot make_snapshot(const IntrinsicState& state, const SolverConfig& config, long step_index);

}  // namespace curveflow
