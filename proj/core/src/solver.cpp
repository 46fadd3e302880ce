#include "curveflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "curveflow/metrics.hpp"
#include "curveflow/tridiagonal.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Everything evaluated from the state before any unknown moves.
struct FrozenCoefficients {
  std::vector<double> beta;
  std::vector<double> dbeta_k;
  std::vector<double> dbeta_nu;
  std::vector<Vec2> grad_beta;
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;
  std::vector<double> contraction;  // curvature * normal speed per node
  std::vector<double> alpha;        // tangential speed, alpha[0] = 0
  double mean_contraction = 0.0;
  double rate = 0.0;
};

DiscreteGeometry state_geometry(const IntrinsicState& state) {
  DiscreteGeometry geom;
  geom.local_length = state.local_length;
  geom.tangent_angle = state.tangent_angle;
  geom.curvature = state.curvature;
  geom.length = total_length(geom.local_length);
  geom.turning_number = state.turning_number;
  return geom;
}

FrozenCoefficients freeze(const IntrinsicState& state, const SolverConfig& config) {
  const std::size_t n = state.size();
  FrozenCoefficients f;
  f.beta.resize(n);
  f.dbeta_k.resize(n);
  f.dbeta_nu.resize(n);
  f.grad_beta.resize(n);
  f.tangent.resize(n);
  f.normal.resize(n);
  f.contraction.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = state.curvature[i];
    const double nu = state.tangent_angle[i];
    const Vec2 pos = state.position[i];
    f.beta[i] = config.model.normal_speed(pos, k, nu);
    const VelocityModel::Derivatives d = config.model.derivatives(pos, k, nu);
    f.dbeta_k[i] = d.d_curvature;
    f.dbeta_nu[i] = d.d_angle;
    f.grad_beta[i] = d.d_position;
    f.tangent[i] = {std::cos(nu), std::sin(nu)};
    f.normal[i] = {-std::sin(nu), std::cos(nu)};
    f.contraction[i] = k * f.beta[i];
  }
  const DiscreteGeometry geom = state_geometry(state);
  f.mean_contraction = curve_average(f.contraction, geom);
  if (config.strategy.kind == RedistributionStrategy::Kind::AsymptoticallyUniform) {
    f.rate = uniformity_rate(config.strategy, f.mean_contraction);
  }
  const std::vector<double> source =
      redistribution_source(config.strategy, geom, f.beta, f.mean_contraction, f.rate);
  double contraction_scale = std::abs(f.mean_contraction) + std::abs(f.rate);
  for (double c : f.contraction) contraction_scale = std::max(contraction_scale, std::abs(c));
  f.alpha = integrate_tangential_speed(source, geom, contraction_scale);
  return f;
}

double choose_tau(const IntrinsicState& state, const SolverConfig& config) {
  if (config.tau_ratio <= 0.0) return config.tau;
  const std::size_t n = state.size();
  double d_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = config.model.derivatives(state.position[i], state.curvature[i],
                                            state.tangent_angle[i]);
    d_max = std::max(d_max, d.d_curvature);
  }
  double h_min = std::numeric_limits<double>::infinity();
  for (double g : state.local_length) h_min = std::min(h_min, g / static_cast<double>(n));
  double tau = config.tau > 0.0 ? config.tau : std::numeric_limits<double>::infinity();
  if (d_max > 0.0 && h_min > 0.0 && std::isfinite(h_min)) {
    tau = std::min(tau, config.tau_ratio * h_min * h_min / d_max);
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ValidationError("tau", "no admissible step size; set tau or tau_ratio");
  }
  return tau;
}

DiagnosticsRow diagnostics_row(const IntrinsicState& state) {
  const std::size_t n = state.size();
  DiagnosticsRow row;
  row.t = state.t;
  std::vector<double> chord(n);
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = state.position[i];
    const Vec2 b = state.position[(i + 1) % n];
    chord[i] = (b - a).norm();
    area += 0.5 * cross(a, b);
  }
  for (double c : chord) row.length += c;
  row.area = area;
  for (double k : state.curvature) row.max_curvature = std::max(row.max_curvature, std::abs(k));
  const MeshQualityMetrics quality = mesh_quality(chord);
  row.mesh_ratio = quality.ratio;
  row.dispersion = quality.dispersion;
  row.stdev = quality.stdev;
  return row;
}

}  // namespace

void SolverConfig::validate() const {
  if (n < 4) throw ValidationError("n", "need at least 4 grid points");
  if (tau <= 0.0 && tau_ratio <= 0.0) {
    throw ValidationError("tau", "set a positive tau or a positive tau_ratio");
  }
  if (tau < 0.0 || !std::isfinite(tau)) throw ValidationError("tau", "must be finite");
  if (tau_ratio < 0.0 || !std::isfinite(tau_ratio)) {
    throw ValidationError("tau_ratio", "must be finite and nonnegative");
  }
  if (t_end <= 0.0 || !std::isfinite(t_end)) throw ValidationError("t_end", "must be positive");
  if (stop.min_length <= 0.0) throw ValidationError("stop.L_min", "must be positive");
  if (stop.max_curvature <= 0.0) throw ValidationError("stop.k_max", "must be positive");
  if (stop.max_mesh_ratio <= 1.0) throw ValidationError("stop.ratio_max", "must exceed 1");
  if (resync_tolerance < 0.0) throw ValidationError("resync_tol", "must be nonnegative");
  if (snapshot_every < 0) throw ValidationError("snapshot_every", "must be nonnegative");
  if (strategy.kind == RedistributionStrategy::Kind::AsymptoticallyUniform &&
      (strategy.kappa1 < 0.0 || strategy.kappa2 < 0.0 ||
       strategy.kappa1 + strategy.kappa2 <= 0.0)) {
    throw ValidationError("strategy.kappa1",
                          "uniformity constants must be nonnegative with a positive sum");
  }
}

double IntrinsicState::length() const { return total_length(local_length); }

IntrinsicState initial_state(const PlanarCurve& curve) {
  DiscreteGeometry geom = analyze(curve);
  IntrinsicState state;
  state.position = curve.nodes();
  state.curvature = std::move(geom.curvature);
  state.tangent_angle = std::move(geom.tangent_angle);
  state.local_length = std::move(geom.local_length);
  state.turning_number = geom.turning_number;
  return state;
}

double advance_local_length(double g, double shrink, double total, double rate, double tau) {
  const double x = (shrink + rate) * tau;
  const double phi = std::abs(x) < 1e-12 ? 1.0 : -std::expm1(-x) / x;
  return g * std::exp(-x) + total * rate * tau * phi;
}

StepStats step(IntrinsicState& state, const SolverConfig& config) {
  return step(state, config, choose_tau(state, config));
}

StepStats step(IntrinsicState& state, const SolverConfig& config, double tau) {
  const std::size_t n = state.size();
  if (n < 4) throw InvalidArgument("state needs at least 4 nodes");
  if (state.curvature.size() != n || state.tangent_angle.size() != n ||
      state.local_length.size() != n) {
    throw InconsistentLengths("state fields disagree about the node count");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("step size must be positive and finite");
  }
  const double nd = static_cast<double>(n);
  const double L_old = state.length();
  if (!(L_old > 0.0)) throw LengthZero("curve length is not positive");

  StepStats stats;
  stats.tau_used = tau;

  const FrozenCoefficients f = freeze(state, config);
  const std::vector<double>& g_old = state.local_length;
  const std::vector<double>& k_old = state.curvature;
  const std::vector<double>& nu_old = state.tangent_angle;

  // Local length first, by the exact solution of its frozen-coefficient ODE;
  // every spatial operator below runs on the updated mesh.
  std::vector<double> g_new(n);
  for (std::size_t i = 0; i < n; ++i) {
    double shrink = f.mean_contraction;
    double rate = 0.0;
    switch (config.strategy.kind) {
      case RedistributionStrategy::Kind::Zero:
        shrink = 0.5 * (f.contraction[i] + f.contraction[(i + 1) % n]);
        break;
      case RedistributionStrategy::Kind::RelativeLocalLength:
        break;
      case RedistributionStrategy::Kind::AsymptoticallyUniform:
        rate = f.rate;
        break;
    }
    g_new[i] = advance_local_length(g_old[i], shrink, L_old, rate, tau);
    if (!std::isfinite(g_new[i]) || !(g_new[i] > 0.0)) {
      throw MeshCollapse("local length of segment " + std::to_string(i) + " collapsed");
    }
  }

  std::vector<double> h(n), w(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = g_new[i] / nd;
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 * (h[(i + n - 1) % n] + h[i]);

  // Diffusion matrix shared by the tangent angle and both position solves.
  CyclicTridiagonalSystem diffusion;
  diffusion.sub.resize(n);
  diffusion.diag.resize(n);
  diffusion.sup.resize(n);
  diffusion.rhs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    diffusion.sub[i] = -tau * f.dbeta_k[i] / (w[i] * h[prev]);
    diffusion.sup[i] = -tau * f.dbeta_k[i] / (w[i] * h[i]);
    diffusion.diag[i] = 1.0 - diffusion.sub[i] - diffusion.sup[i];
  }
  const bool diffusion_dominant = diffusion.diagonally_dominant();

  // Tangent angle: diffusion implicit, transport upwinded explicit. The
  // stored angles are unwrapped, so the stencil at the seam sees the
  // periodic extension offset by the total turning.
  const double jump = kTwoPi * static_cast<double>(state.turning_number);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const double ahead = i + 1 < n ? nu_old[i + 1] : nu_old[0] + jump;
    const double behind = i > 0 ? nu_old[i - 1] : nu_old[n - 1] - jump;
    const double c = f.alpha[i] + f.dbeta_nu[i];
    const double advect =
        c > 0.0 ? c * (ahead - nu_old[i]) / h[i] : c * (nu_old[i] - behind) / h[prev];
    const double forcing = dot(f.grad_beta[i], f.tangent[i]);
    diffusion.rhs[i] = nu_old[i] + tau * (advect + forcing);
  }
  diffusion.rhs[0] += diffusion.sub[0] * jump;
  diffusion.rhs[n - 1] -= diffusion.sup[n - 1] * jump;
  std::vector<double> nu_new = solve_cyclic_tridiagonal(diffusion);
  if (!diffusion_dominant) ++stats.nondominant_solves;

  // Curvature: diffusion and the conservative transport flux implicit, the
  // nonlinear remainder of the speed Laplacian and the reaction explicit.
  const auto laplacian = [&](const std::vector<double>& values, std::size_t i) {
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    return ((values[next] - values[i]) / h[i] - (values[i] - values[prev]) / h[prev]) / w[i];
  };
  CyclicTridiagonalSystem ksys;
  ksys.sub.resize(n);
  ksys.diag.resize(n);
  ksys.sup.resize(n);
  ksys.rhs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    const double flux_ahead = 0.5 * (f.alpha[i] + f.alpha[next]);
    const double flux_behind = 0.5 * (f.alpha[prev] + f.alpha[i]);
    const double ap = std::max(flux_ahead, 0.0), am = std::min(flux_ahead, 0.0);
    const double bp = std::max(flux_behind, 0.0), bm = std::min(flux_behind, 0.0);
    ksys.sub[i] = diffusion.sub[i] + tau * bm / w[i];
    ksys.sup[i] = diffusion.sup[i] - tau * ap / w[i];
    ksys.diag[i] = 1.0 - diffusion.sub[i] - diffusion.sup[i] + tau * (bp - am) / w[i];

    double reaction = k_old[i] * f.mean_contraction;
    switch (config.strategy.kind) {
      case RedistributionStrategy::Kind::Zero:
        reaction = k_old[i] * f.contraction[i];
        break;
      case RedistributionStrategy::Kind::RelativeLocalLength:
        break;
      case RedistributionStrategy::Kind::AsymptoticallyUniform: {
        const double g_node = 0.5 * (g_old[prev] + g_old[i]);
        reaction += (1.0 - L_old / g_node) * k_old[i] * f.rate;
        break;
      }
    }
    const double remainder = laplacian(f.beta, i) - f.dbeta_k[i] * laplacian(k_old, i);
    ksys.rhs[i] = k_old[i] + tau * (remainder + reaction);
  }
  if (!ksys.diagonally_dominant()) ++stats.nondominant_solves;
  std::vector<double> k_new = solve_cyclic_tridiagonal(ksys);

  // Positions: beta * N = dbeta_k * d2x/ds2 + (beta - dbeta_k * k) * N, so
  // the stiff part rides on the same implicit diffusion matrix.
  std::vector<double> rhs_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 move =
        (f.beta[i] - f.dbeta_k[i] * k_old[i]) * f.normal[i] + f.alpha[i] * f.tangent[i];
    diffusion.rhs[i] = state.position[i].x + tau * move.x;
    rhs_y[i] = state.position[i].y + tau * move.y;
  }
  const std::vector<double> x_new = solve_cyclic_tridiagonal(diffusion);
  diffusion.rhs = std::move(rhs_y);
  const std::vector<double> y_new = solve_cyclic_tridiagonal(diffusion);
  if (!diffusion_dominant) stats.nondominant_solves += 2;

  std::vector<Vec2> pos_new(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos_new[i] = {x_new[i], y_new[i]};
    if (!std::isfinite(x_new[i]) || !std::isfinite(y_new[i]) || !std::isfinite(nu_new[i]) ||
        !std::isfinite(k_new[i])) {
      throw NonFiniteState("solve produced a non-finite value at node " + std::to_string(i));
    }
  }

  // Positions are the master variable: measure the moved polygon, and if the
  // evolved curvature drifted away from it, rebuild every intrinsic field.
  DiscreteGeometry measured;
  try {
    measured = analyze(PlanarCurve(pos_new));
  } catch (const DegenerateSegment& e) {
    throw MeshCollapse(std::string("nodes collided: ") + e.what());
  }
  double gap = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = measured.node_weight(i);
    const double d = k_new[i] - measured.curvature[i];
    gap += wi * d * d;
    norm += wi * measured.curvature[i] * measured.curvature[i];
  }
  const double drift = std::sqrt(gap) / (std::sqrt(norm) + 1e-12);

  bool resync = drift > config.resync_tolerance;
  for (std::size_t i = 0; !resync && i + 1 < n; ++i) {
    resync = std::abs(nu_new[i + 1] - nu_new[i]) >= std::numbers::pi;
  }
  resync = resync || std::abs(nu_new[0] + jump - nu_new[n - 1]) >= std::numbers::pi;
  int turning = state.turning_number;
  if (resync) {
    stats.resynced = true;
    k_new = measured.curvature;
    const double shift =
        kTwoPi * std::round((nu_new[0] - measured.tangent_angle[0]) / kTwoPi);
    nu_new = measured.tangent_angle;
    for (double& v : nu_new) v += shift;
    g_new = measured.local_length;
    turning = measured.turning_number;
  }

  double k_max = 0.0;
  for (double k : k_new) k_max = std::max(k_max, std::abs(k));
  if (k_max > config.stop.max_curvature) {
    throw CurvatureBlowup("curvature " + std::to_string(k_max) + " exceeds the limit " +
                          std::to_string(config.stop.max_curvature));
  }

  state.position = std::move(pos_new);
  state.curvature = std::move(k_new);
  state.tangent_angle = std::move(nu_new);
  state.local_length = std::move(g_new);
  state.turning_number = turning;
  state.t += tau;
  return stats;
}

const char* to_string(Termination cause) {
  switch (cause) {
    case Termination::ReachedEnd: return "reached_t_end";
    case Termination::LengthBelowMin: return "length_below_min";
    case Termination::CurvatureBlowup: return "curvature_blowup";
    case Termination::MeshRatioAlarm: return "mesh_ratio_alarm";
    case Termination::MeshCollapse: return "mesh_collapse";
  }
  return "unknown";
}

Snapshot make_snapshot(const IntrinsicState& state, const SolverConfig& config, long step_index) {
  Snapshot snap;
  snap.step_index = step_index;
  snap.t = state.t;
  snap.position = state.position;
  snap.curvature = state.curvature;
  snap.tangent_angle = state.tangent_angle;
  snap.local_length = state.local_length;
  snap.tangential_speed = freeze(state, config).alpha;
  return snap;
}

RunResult run(const PlanarCurve& initial, const SolverConfig& config) {
  config.validate();
  IntrinsicState state = initial_state(initial);
  RunResult result;

  const double t_end = config.t_end;
  const double tiny = 1e-12 * t_end;
  long step_index = 0;
  long last_recorded = -1;

  const auto record = [&] {
    result.snapshots.push_back(make_snapshot(state, config, step_index));
    result.diagnostics.push_back(diagnostics_row(state));
    last_recorded = step_index;
  };
  // Stop criteria judge the actual polygon, not the evolved local lengths.
  const auto stop_hit = [&]() -> bool {
    const std::size_t n = state.size();
    double len = 0.0;
    double shortest = std::numeric_limits<double>::infinity();
    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = (state.position[(i + 1) % n] - state.position[i]).norm();
      len += c;
      shortest = std::min(shortest, c);
      longest = std::max(longest, c);
    }
    if (len < config.stop.min_length) {
      result.termination = Termination::LengthBelowMin;
      return true;
    }
    if (!(shortest > 0.0) || longest / shortest > config.stop.max_mesh_ratio) {
      result.termination = Termination::MeshRatioAlarm;
      return true;
    }
    return false;
  };

  record();
  if (stop_hit()) {
    result.t_final = state.t;
    return result;
  }

  const double snap_dt = t_end / 50.0;
  double next_snap = snap_dt;
  bool stopped = false;
  while (state.t < t_end - tiny) {
    const double tau = std::min(choose_tau(state, config), t_end - state.t);
    try {
      const StepStats s = step(state, config, tau);
      ++step_index;
      result.steps = step_index;
      if (s.resynced) ++result.resync_count;
      result.nondominant_solves += s.nondominant_solves;
    } catch (const MeshCollapse& e) {
      result.termination = Termination::MeshCollapse;
      result.note = e.what();
      stopped = true;
      break;
    } catch (const CurvatureBlowup& e) {
      result.termination = Termination::CurvatureBlowup;
      result.note = e.what();
      stopped = true;
      break;
    } catch (const SingularMatrix& e) {
      throw SingularMatrix(std::string(e.what()) + " (step " + std::to_string(step_index + 1) +
                           ", t = " + std::to_string(state.t) + ")");
    } catch (const NonFiniteState& e) {
      throw NonFiniteState(std::string(e.what()) + " (step " + std::to_string(step_index + 1) +
                           ", t = " + std::to_string(state.t) + ")");
    }
    if (stop_hit()) {
      stopped = true;
      break;
    }
    if (config.snapshot_every > 0) {
      if (step_index % config.snapshot_every == 0) record();
    } else if (state.t >= next_snap - tiny) {
      record();
      while (next_snap <= state.t + tiny) next_snap += snap_dt;
    }
  }
  if (!stopped) result.termination = Termination::ReachedEnd;
  if (last_recorded != step_index) record();
  result.t_final = state.t;
  return result;
}

}  // namespace curveflow
