#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"

#include "curveflow/geometry.hpp"
#include "curveflow/metrics.hpp"
#include "curveflow/scenario.hpp"
#include "curveflow/solver.hpp"
#include "oracles.hpp"

using namespace curveflow;

namespace {

constexpr double kPi = std::numbers::pi;
// exactly representable step so step counts in run() are deterministic
constexpr double kExactTau = 0x1p-13;

SolverConfig base_config() {
  SolverConfig config;
  config.n = 200;
  config.tau = 1e-4;
  config.t_end = 1.0;
  config.model = VelocityModel::mean_curvature();
  config.strategy = RedistributionStrategy::relative_local_length();
  return config;
}

double max_mesh_dispersion(const std::vector<Vec2>& nodes) {
  std::vector<double> chord(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    chord[i] = (nodes[(i + 1) % nodes.size()] - nodes[i]).norm();
  }
  return mesh_quality(chord).dispersion;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("initial state mirrors the polygon") {
  const auto nodes = oracle::regular_polygon(200, 1.0);
  const IntrinsicState state = initial_state(PlanarCurve(nodes));
  CHECK(state.t == 0.0);
  CHECK(state.size() == 200);
  CHECK(state.turning_number == 1);
  const double k_discrete = (kPi / 200) / std::sin(kPi / 200);
  for (double k : state.curvature) CHECK(std::abs(k - k_discrete) < 1e-12);
  const double perimeter = 200 * 2.0 * std::sin(kPi / 200);
  CHECK(state.length() == doctest::Approx(perimeter).epsilon(1e-13));
  for (std::size_t i = 0; i < 200; ++i) {
    CHECK(state.position[i].x == nodes[i].x);
    CHECK(state.position[i].y == nodes[i].y);
  }
}

TEST_CASE("local length update solves its ODE exactly") {
  // pure decay
  CHECK(advance_local_length(2.0, 0.5, 77.0, 0.0, 0.3) ==
        doctest::Approx(2.0 * std::exp(-0.15)).epsilon(1e-15));
  // zero step is the identity
  CHECK(advance_local_length(1.7, 3.0, 5.0, 2.0, 0.0) == 1.7);

  // pure relaxation toward the total: g(t) = L + (g0 - L) exp(-rate t)
  const double L = 4.0, rate = 7.0, tau = 0.01;
  double g = 1.0;
  for (int i = 0; i < 100; ++i) g = advance_local_length(g, 0.0, L, rate, tau);
  const double exact = L + (1.0 - L) * std::exp(-rate * 1.0);
  CHECK(g == doctest::Approx(exact).epsilon(1e-12));

  // combined shrink and relaxation stays positive
  g = 1e-8;
  for (int i = 0; i < 50; ++i) {
    g = advance_local_length(g, 40.0, 2.0, 3.0, 0.05);
    CHECK(g > 0.0);
  }
}

TEST_CASE("one step on a circle contracts it at the curvature rate") {
  SolverConfig config = base_config();
  IntrinsicState state = initial_state(PlanarCurve(oracle::regular_polygon(200, 1.0)));
  const StepStats stats = step(state, config);
  CHECK(stats.tau_used == config.tau);
  CHECK(std::abs(fitted_radius(state.position) - std::sqrt(1.0 - 2.0 * config.tau)) < 1e-6);
  CHECK(state.t == config.tau);

  // no tangential motion is needed on an already uniform circle
  const Snapshot snap = make_snapshot(state, config, 1);
  for (double a : snap.tangential_speed) CHECK(std::abs(a) < 1e-10);
}

TEST_CASE("a stationary law leaves the curve in place") {
  // beta = k - 1 vanishes on the unit circle up to the polygon bias
  SolverConfig config = base_config();
  config.model =
      VelocityModel::anisotropic(ScalarField::constant(1.0), ScalarField::constant(-1.0));
  IntrinsicState state = initial_state(PlanarCurve(oracle::regular_polygon(200, 1.0)));
  const IntrinsicState before = state;
  step(state, config);
  for (std::size_t i = 0; i < state.size(); ++i) {
    CHECK(std::abs(state.position[i].x - before.position[i].x) < 1e-8);
    CHECK(std::abs(state.position[i].y - before.position[i].y) < 1e-8);
    CHECK(std::abs(state.curvature[i] - before.curvature[i]) < 1e-6);
    CHECK(std::abs(state.tangent_angle[i] - before.tangent_angle[i]) < 1e-10);
    CHECK(std::abs(state.local_length[i] / before.local_length[i] - 1.0) < 1e-7);
  }
}

TEST_CASE("shrinking circle tracks the exact radius over many steps") {
  SolverConfig config = base_config();
  config.n = 100;
  config.tau = 5e-4;
  config.t_end = 0.25;
  const RunResult result = run(PlanarCurve(oracle::regular_polygon(100, 1.0)), config);
  CHECK(result.termination == Termination::ReachedEnd);
  CHECK(result.t_final == doctest::Approx(0.25).epsilon(1e-9));
  const double r_exact = std::sqrt(1.0 - 2.0 * 0.25);
  const double r_got = fitted_radius(result.snapshots.back().position);
  CHECK(std::abs(r_got - r_exact) < 5e-3 * r_exact);
}

TEST_CASE("curvature blowup is reported as a physical termination") {
  SolverConfig config = base_config();
  config.n = 64;
  config.tau = 1e-6;
  config.t_end = 2e-3;
  config.stop.max_curvature = 100.0;
  config.stop.min_length = 1e-6;
  const RunResult result = run(PlanarCurve(oracle::regular_polygon(64, 0.05)), config);
  CHECK(result.termination == Termination::CurvatureBlowup);
  CHECK(result.t_final < config.t_end);
  CHECK(result.steps > 0);
  CHECK(!result.note.empty());
}

TEST_CASE("length floor stops the run") {
  SolverConfig config = base_config();
  config.n = 100;
  config.tau = 1e-4;
  config.t_end = 0.1;
  config.stop.min_length = 6.0;  // initial perimeter is just above 2*pi
  const RunResult result = run(PlanarCurve(oracle::regular_polygon(100, 1.0)), config);
  CHECK(result.termination == Termination::LengthBelowMin);
  CHECK(result.t_final > 0.0);
  CHECK(result.t_final < 0.1);
}

TEST_CASE("a badly graded initial mesh trips the ratio alarm before stepping") {
  SolverConfig config = base_config();
  config.n = 100;
  config.stop.max_mesh_ratio = 5.0;  // the gamma = 0.8 clustering sits near 9
  const RunResult result = run(PlanarCurve(oracle::clustered_circle(100, 1.0, 0.8)), config);
  CHECK(result.termination == Termination::MeshRatioAlarm);
  CHECK(result.steps == 0);
  CHECK(result.t_final == 0.0);
  CHECK(result.snapshots.size() == 1);
}

TEST_CASE("a failed step leaves the state untouched") {
  SolverConfig config = base_config();
  config.stop.max_curvature = 1e-6;  // every curvature exceeds this
  IntrinsicState state = initial_state(PlanarCurve(oracle::regular_polygon(64, 1.0)));
  const IntrinsicState before = state;
  CHECK_THROWS_AS(step(state, config), CurvatureBlowup);
  CHECK(state.t == before.t);
  for (std::size_t i = 0; i < state.size(); ++i) {
    CHECK(state.position[i].x == before.position[i].x);
    CHECK(state.position[i].y == before.position[i].y);
    CHECK(state.curvature[i] == before.curvature[i]);
    CHECK(state.tangent_angle[i] == before.tangent_angle[i]);
    CHECK(state.local_length[i] == before.local_length[i]);
  }
}

TEST_CASE("step rejects inconsistent or impossible input") {
  SolverConfig config = base_config();
  IntrinsicState state = initial_state(PlanarCurve(oracle::regular_polygon(16, 1.0)));
  IntrinsicState ragged = state;
  ragged.curvature.pop_back();
  CHECK_THROWS_AS(step(ragged, config), InconsistentLengths);
  CHECK_THROWS_AS(step(state, config, 0.0), InvalidArgument);
  CHECK_THROWS_AS(step(state, config, -1e-4), InvalidArgument);
  CHECK_THROWS_AS(step(state, config, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("config validation names the offending field") {
  const auto field_of = [](SolverConfig c) -> std::string {
    try {
      c.validate();
    } catch (const ValidationError& e) {
      return e.field;
    }
    return "";
  };
  SolverConfig config = base_config();
  config.n = 3;
  CHECK(field_of(config) == "n");
  config = base_config();
  config.tau = 0.0;
  config.tau_ratio = 0.0;
  CHECK(field_of(config) == "tau");
  config = base_config();
  config.t_end = 0.0;
  CHECK(field_of(config) == "t_end");
  config = base_config();
  config.stop.max_mesh_ratio = 1.0;
  CHECK(field_of(config) == "stop.ratio_max");
  config = base_config();
  config.resync_tolerance = -1.0;
  CHECK(field_of(config) == "resync_tol");
  config = base_config();
  config.snapshot_every = -2;
  CHECK(field_of(config) == "snapshot_every");
  CHECK(field_of(base_config()).empty());
}

TEST_CASE("adaptive step size follows the finest cell") {
  SolverConfig config = base_config();
  config.n = 100;
  config.tau = 0.0;
  config.tau_ratio = 0.5;
  IntrinsicState state = initial_state(PlanarCurve(oracle::clustered_circle(100, 1.0, 0.3)));
  double h_min = std::numeric_limits<double>::infinity();
  for (double g : state.local_length) h_min = std::min(h_min, g / 100.0);
  const StepStats stats = step(state, config);
  CHECK(stats.tau_used == doctest::Approx(0.5 * h_min * h_min).epsilon(1e-12));

  // a fixed tau acts as a ceiling on top of the adaptive choice
  config.tau = 1e-9;
  IntrinsicState capped = initial_state(PlanarCurve(oracle::clustered_circle(100, 1.0, 0.3)));
  CHECK(step(capped, config).tau_used == 1e-9);
}

TEST_CASE("snapshot cadence by step count and by time") {
  SolverConfig config = base_config();
  config.n = 100;
  config.tau = kExactTau;
  config.t_end = 100 * kExactTau;
  config.snapshot_every = 10;
  const RunResult by_steps = run(PlanarCurve(oracle::regular_polygon(100, 1.0)), config);
  CHECK(by_steps.steps == 100);
  REQUIRE(by_steps.snapshots.size() == 11);
  for (std::size_t j = 0; j < 11; ++j) {
    CHECK(by_steps.snapshots[j].step_index == static_cast<long>(10 * j));
  }
  CHECK(by_steps.diagnostics.size() == by_steps.snapshots.size());
  CHECK(by_steps.snapshots[1].t == doctest::Approx(10 * kExactTau).epsilon(1e-15));

  config.snapshot_every = 0;  // ~50 evenly spaced times
  const RunResult by_time = run(PlanarCurve(oracle::regular_polygon(100, 1.0)), config);
  CHECK(by_time.snapshots.size() == 51);
}

TEST_CASE("zero resync tolerance re-measures the curve every step") {
  SolverConfig config = base_config();
  config.n = 128;
  config.resync_tolerance = 0.0;
  IntrinsicState state = initial_state(PlanarCurve(oracle::regular_polygon(128, 1.0)));
  for (int i = 0; i < 3; ++i) {
    const StepStats stats = step(state, config);
    CHECK(stats.resynced);
    const auto measured = compute_curvature(PlanarCurve(state.position));
    for (std::size_t j = 0; j < 128; ++j) CHECK(state.curvature[j] == measured[j]);
  }

  config.t_end = 50 * config.tau;
  const RunResult result = run(PlanarCurve(oracle::regular_polygon(128, 1.0)), config);
  CHECK(result.resync_count == result.steps);
}

TEST_CASE("tangent angles stay unwrapped while an ellipse evolves") {
  SolverConfig config = base_config();
  config.n = 128;
  config.t_end = 50 * config.tau;
  std::vector<Vec2> nodes(128);
  for (std::size_t i = 0; i < 128; ++i) {
    const double u = 2.0 * kPi * static_cast<double>(i) / 128.0;
    nodes[i] = {2.0 * std::cos(u), std::sin(u)};
  }
  const RunResult result = run(PlanarCurve(nodes), config);
  CHECK(result.termination == Termination::ReachedEnd);
  const auto& nu = result.snapshots.back().tangent_angle;
  for (std::size_t i = 0; i + 1 < nu.size(); ++i) CHECK(std::abs(nu[i + 1] - nu[i]) < kPi);
  CHECK(std::abs(nu.front() + 2.0 * kPi - nu.back()) < kPi);
}

TEST_CASE("winding is preserved on a star-shaped curve") {
  SolverConfig config = base_config();
  config.n = 160;
  config.tau = 5e-5;
  config.t_end = 0.02;
  config.strategy = RedistributionStrategy::asymptotically_uniform(10.0, 10.0);
  std::mt19937 rng(57);
  const RunResult result = run(PlanarCurve(oracle::random_star(rng, 160)), config);
  CHECK(result.termination == Termination::ReachedEnd);
  CHECK(turning_number(PlanarCurve(result.snapshots.back().position)) == 1);
}

TEST_CASE("enclosed area decays at the exact mean curvature rate") {
  SolverConfig config = base_config();
  config.tau = kExactTau;
  config.t_end = 100 * kExactTau;
  std::vector<Vec2> nodes(200);
  for (std::size_t i = 0; i < 200; ++i) {
    const double u = 2.0 * kPi * static_cast<double>(i) / 200.0;
    nodes[i] = {1.5 * std::cos(u), std::sin(u)};
  }
  const RunResult result = run(PlanarCurve(nodes), config);
  CHECK(result.termination == Termination::ReachedEnd);
  const double a0 = enclosed_area(PlanarCurve(result.snapshots.front().position));
  const double a1 = enclosed_area(PlanarCurve(result.snapshots.back().position));
  CHECK(std::abs((a0 - a1) - 2.0 * kPi * result.t_final) < 1e-3);
}

TEST_CASE("total length decays at the measured contraction rate") {
  // |dL/tau + sum k beta w| is second order when tau is refined with h^2
  double previous = 0.0;
  std::size_t level = 0;
  for (std::size_t n : {std::size_t{100}, std::size_t{200}, std::size_t{400}}) {
    std::vector<Vec2> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
      nodes[i] = {2.0 * std::cos(u), std::sin(u)};
    }
    const DiscreteGeometry before = analyze(PlanarCurve(nodes));
    SolverConfig config = base_config();
    config.n = n;
    config.tau = 1e-4 * std::pow(100.0 / static_cast<double>(n), 2);
    IntrinsicState state = initial_state(PlanarCurve(nodes));
    step(state, config);
    const DiscreteGeometry after = analyze(PlanarCurve(state.position));

    double contraction = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      contraction += before.curvature[i] * before.curvature[i] * before.node_weight(i);
    }
    const double residual = std::abs((after.length - before.length) / config.tau + contraction);
    const double h = before.length / static_cast<double>(n);
    CHECK(residual < 2.0 * (config.tau + h * h));
    if (level > 0) CHECK(residual < 0.35 * previous);
    previous = residual;
    ++level;
  }
}

TEST_CASE("averaged reaction term sustains a tenfold larger step") {
  // without redistribution the dumbbell merges grid points long before
  // extinction; with it the same mesh survives a 10x larger step to the end
  Scenario sc;
  sc.kind = Scenario::Kind::Dumbbell;
  sc.delta = 0.25;
  SolverConfig config = base_config();
  config.tau = 5e-5;
  config.strategy = RedistributionStrategy::zero();
  const RunResult frozen = run(sc.generate(config.n), config);
  CHECK((frozen.termination == Termination::MeshRatioAlarm ||
         frozen.termination == Termination::MeshCollapse));
  CHECK(frozen.t_final < 0.3);

  config.tau = 5e-4;
  config.strategy = RedistributionStrategy::asymptotically_uniform(10.0, 10.0);
  const RunResult spread = run(sc.generate(config.n), config);
  CHECK(spread.termination == Termination::CurvatureBlowup);
  CHECK(spread.t_final > frozen.t_final);
  for (const DiagnosticsRow& row : spread.diagnostics) CHECK(row.mesh_ratio < 2.0);
}

TEST_CASE("redistribution choice does not move the shape") {
  SolverConfig config = base_config();
  config.n = 100;
  config.tau = 2e-4;
  config.t_end = 0.2;
  const PlanarCurve start(oracle::regular_polygon(100, 1.0));
  const RunResult relative = run(start, config);
  config.strategy = RedistributionStrategy::asymptotically_uniform(10.0, 10.0);
  const RunResult uniform = run(start, config);
  REQUIRE(relative.termination == Termination::ReachedEnd);
  REQUIRE(uniform.termination == Termination::ReachedEnd);
  const double h = 2.0 * kPi / 100.0;
  CHECK(hausdorff_distance(relative.snapshots.back().position,
                           uniform.snapshots.back().position) < 5.0 * h * h);
}

TEST_CASE("uniformizing redistribution evens out a clustered circle") {
  SolverConfig config = base_config();
  config.n = 100;
  config.t_end = 0.05;
  config.strategy = RedistributionStrategy::asymptotically_uniform(50.0, 10.0);
  const PlanarCurve start(oracle::clustered_circle(100, 1.0, 0.5));
  const double d0 = max_mesh_dispersion(start.nodes());
  CHECK(d0 > 0.3);
  const RunResult result = run(start, config);
  CHECK(result.termination == Termination::ReachedEnd);
  const double d1 = max_mesh_dispersion(result.snapshots.back().position);
  CHECK(d1 < 0.5 * d0);
  CHECK(d1 < 0.1);
}

TEST_CASE("relative redistribution preserves each segment's share of length") {
  SolverConfig config = base_config();
  config.n = 100;
  config.t_end = 0.05;
  const PlanarCurve start(oracle::clustered_circle(100, 1.0, 0.5));
  const RunResult result = run(start, config);
  CHECK(result.termination == Termination::ReachedEnd);

  const auto& first = result.snapshots.front().position;
  const auto& last = result.snapshots.back().position;
  std::vector<double> c0(100), c1(100);
  double l0 = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    c0[i] = (first[(i + 1) % 100] - first[i]).norm();
    c1[i] = (last[(i + 1) % 100] - last[i]).norm();
    l0 += c0[i];
    l1 += c1[i];
  }
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(std::abs((c1[i] / l1) / (c0[i] / l0) - 1.0) < 1e-2);
  }
}

TEST_CASE("termination labels") {
  CHECK(std::string(to_string(Termination::ReachedEnd)) == "reached_t_end");
  CHECK(std::string(to_string(Termination::LengthBelowMin)) == "length_below_min");
  CHECK(std::string(to_string(Termination::CurvatureBlowup)) == "curvature_blowup");
  CHECK(std::string(to_string(Termination::MeshRatioAlarm)) == "mesh_ratio_alarm");
  CHECK(std::string(to_string(Termination::MeshCollapse)) == "mesh_collapse");
}

}  // TEST_SUITE("solver")
