#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "curveflow/geometry.hpp"
#include "curveflow/redistribution.hpp"
#include "curveflow/solver.hpp"
#include "curveflow/tridiagonal.hpp"

using namespace curveflow;

namespace {

std::vector<Vec2> circle_nodes(std::size_t n) {
  std::vector<Vec2> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    nodes[i] = {std::cos(u), std::sin(u)};
  }
  return nodes;
}

CyclicTridiagonalSystem diffusion_like(std::size_t n) {
  CyclicTridiagonalSystem s;
  s.sub.assign(n, -0.3);
  s.diag.assign(n, 1.6);
  s.sup.assign(n, -0.3);
  s.rhs.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.rhs[i] = std::sin(0.01 * static_cast<double>(i));
  return s;
}

void bm_cyclic_solve(benchmark::State& state) {
  const auto system = diffusion_like(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cyclic_tridiagonal(system));
  }
}

void bm_analyze(benchmark::State& state) {
  const PlanarCurve curve(circle_nodes(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(curve));
  }
}

void bm_tangential_speed(benchmark::State& state) {
  // clustered mesh so the uniformizing source carries real variation
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<Vec2> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n);
    const double phase = 2.0 * std::numbers::pi * u + 0.5 * std::sin(2.0 * std::numbers::pi * u);
    nodes[i] = {std::cos(phase), std::sin(phase)};
  }
  const DiscreteGeometry geom = analyze(PlanarCurve(nodes));
  const auto strategy = RedistributionStrategy::asymptotically_uniform(10.0, 10.0);
  std::vector<double> contraction(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) {
    contraction[i] = geom.curvature[i] * geom.curvature[i];
  }
  const double mean = curve_average(contraction, geom);
  const double rate = uniformity_rate(strategy, mean);
  double reference = std::abs(mean) + std::abs(rate);
  for (double c : contraction) reference = std::max(reference, std::abs(c));
  for (auto _ : state) {
    const auto source = redistribution_source(strategy, geom, geom.curvature, mean, rate);
    benchmark::DoNotOptimize(integrate_tangential_speed(source, geom, reference));
  }
}

void bm_solver_step(benchmark::State& state) {
  SolverConfig config;
  config.n = static_cast<std::size_t>(state.range(0));
  config.tau = 1e-5;
  config.t_end = 1.0;
  config.model = VelocityModel::mean_curvature();
  config.strategy = RedistributionStrategy::asymptotically_uniform(10.0, 10.0);
  const IntrinsicState initial = initial_state(PlanarCurve(circle_nodes(config.n)));
  for (auto _ : state) {
    IntrinsicState working = initial;
    step(working, config);
    benchmark::DoNotOptimize(working);
  }
}

BENCHMARK(bm_cyclic_solve)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK(bm_analyze)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK(bm_tangential_speed)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK(bm_solver_step)->Arg(128)->Arg(512)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
