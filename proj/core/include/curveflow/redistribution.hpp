#pragma once

#include <span>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

// How grid points are moved along the curve while it evolves in the normal
// direction.
//   Zero:                   no tangential motion.
//   RelativeLocalLength:    tangential speed chosen so each segment keeps its
//                           share of the total length.
//   AsymptoticallyUniform:  additional forcing drives the mesh toward uniform
//                           spacing; kappa1 acts always, kappa2 scales with
//                           the mean contraction rate of the curve.
struct RedistributionStrategy {
  enum class Kind { Zero, RelativeLocalLength, AsymptoticallyUniform };

  Kind kind = Kind::Zero;
  double kappa1 = 0.0;
  double kappa2 = 0.0;

  static RedistributionStrategy zero();
  static RedistributionStrategy relative_local_length();
  static RedistributionStrategy asymptotically_uniform(double kappa1, double kappa2);
};

// log(local_length/length) per segment. Zero everywhere on a uniform mesh;
// sum(exp(theta))/n == 1 identically.
std::vector<double> log_length_ratio(const DiscreteGeometry& geom);

// Relaxation rate toward the uniform mesh: kappa1 + kappa2 * mean_contraction.
// Only meaningful for AsymptoticallyUniform; throws WrongStrategy otherwise.
double uniformity_rate(const RedistributionStrategy& strategy, double mean_contraction);

// Arc-length derivative of the tangential speed at each node.
// mean_contraction is the curve average of curvature * normal speed; rate is
// the uniformity rate (ignored unless the strategy is AsymptoticallyUniform).
// The result integrates to zero around the curve by construction.
std::vector<double> redistribution_source(const RedistributionStrategy& strategy,
                                          const DiscreteGeometry& geom,
                                          std::span<const double> normal_speed,
                                          double mean_contraction, double rate);

// Cumulative arc-length integral of the source with the gauge alpha[0] = 0,
// midpoint rule per segment. The closure defect is removed by subtracting a
// correction linear in arc length; a defect beyond
// 1e-3 * L * max|source| + 1e-10 * L * reference_scale throws
// CompatibilityViolation instead. reference_scale is the magnitude of the
// terms whose cancellation produced the source (e.g. max|k*beta|); it keeps a
// source at rounding-noise level, whose defect is the same size as the source
// itself, from tripping the check.
std::vector<double> integrate_tangential_speed(std::span<const double> source,
                                               const DiscreteGeometry& geom,
                                               double reference_scale = 0.0);

}  // namespace curveflow
