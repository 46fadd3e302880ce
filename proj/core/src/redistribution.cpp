#include "curveflow/redistribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

namespace curveflow {

RedistributionStrategy RedistributionStrategy::zero() { return {}; }

RedistributionStrategy RedistributionStrategy::relative_local_length() {
  RedistributionStrategy s;
  s.kind = Kind::RelativeLocalLength;
  return s;
}

RedistributionStrategy RedistributionStrategy::asymptotically_uniform(double kappa1,
                                                                      double kappa2) {
  if (!(kappa1 >= 0.0)) throw ValidationError("strategy.kappa1", "must be >= 0");
  if (!(kappa2 >= 0.0)) throw ValidationError("strategy.kappa2", "must be >= 0");
  if (!(kappa1 + kappa2 > 0.0)) {
    throw ValidationError("strategy.kappa1", "kappa1 + kappa2 must be positive");
  }
  RedistributionStrategy s;
  s.kind = Kind::AsymptoticallyUniform;
  s.kappa1 = kappa1;
  s.kappa2 = kappa2;
  return s;
}

std::vector<double> log_length_ratio(const DiscreteGeometry& geom) {
  if (!(geom.length > 0.0)) throw LengthZero("log_length_ratio: zero total length");
  std::vector<double> theta(geom.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = std::log(geom.local_length[i] / geom.length);
  }
  return theta;
}

double uniformity_rate(const RedistributionStrategy& strategy, double mean_contraction) {
  if (strategy.kind != RedistributionStrategy::Kind::AsymptoticallyUniform) {
    throw WrongStrategy("uniformity_rate applies to the asymptotically uniform strategy only");
  }
  return strategy.kappa1 + strategy.kappa2 * mean_contraction;
}

std::vector<double> redistribution_source(const RedistributionStrategy& strategy,
                                          const DiscreteGeometry& geom,
                                          std::span<const double> normal_speed,
                                          double mean_contraction, double rate) {
  const std::size_t n = geom.size();
  if (normal_speed.size() != n) {
    throw InconsistentLengths("redistribution_source: " + std::to_string(normal_speed.size()) +
                              " speeds for " + std::to_string(n) + " nodes");
  }
  std::vector<double> source(n, 0.0);
  if (strategy.kind == RedistributionStrategy::Kind::Zero) return source;

  const bool uniformize = strategy.kind == RedistributionStrategy::Kind::AsymptoticallyUniform;
  for (std::size_t i = 0; i < n; ++i) {
    source[i] = geom.curvature[i] * normal_speed[i] - mean_contraction;
    if (uniformize) {
      // exp(-theta) at the node as length over the dual-cell local length;
      // this form makes the weighted source sum vanish identically.
      const double g_node = 0.5 * (geom.local_length[(i + n - 1) % n] + geom.local_length[i]);
      source[i] += (geom.length / g_node - 1.0) * rate;
    }
  }
  return source;
}

std::vector<double> integrate_tangential_speed(std::span<const double> source,
                                               const DiscreteGeometry& geom,
                                               double reference_scale) {
  const std::size_t n = geom.size();
  if (source.size() != n) {
    throw InconsistentLengths("integrate_tangential_speed: " + std::to_string(source.size()) +
                              " sources for " + std::to_string(n) + " nodes");
  }

  std::vector<double> alpha(n, 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    running += 0.5 * (source[i] + source[i + 1]) * geom.segment_length(i);
    alpha[i + 1] = running;
  }
  const double defect =
      running + 0.5 * (source[n - 1] + source[0]) * geom.segment_length(n - 1);

  double max_source = 0.0;
  for (double s : source) max_source = std::max(max_source, std::abs(s));
  const double scale = geom.length * max_source;
  // A source at rounding-noise level integrates to a defect of its own order,
  // so the relative test alone would reject it; the reference-scale floor
  // admits anything at cancellation-noise size.
  const double noise_floor = 1e-10 * geom.length * std::abs(reference_scale);
  if (std::abs(defect) > 1e-3 * scale + noise_floor && scale > 0.0) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "tangential speed does not close up: defect %.3e against scale %.3e",
                  defect, scale);
    throw CompatibilityViolation(msg);
  }
  if (std::abs(defect) > 1e-6 * scale + noise_floor && scale > 0.0) {
    std::cerr << "curveflow: redistribution source off balance by " << defect
              << ", projecting it out\n";
  }

  // Remove the closure defect with a correction linear in arc length; the
  // gauge alpha[0] = 0 survives.
  if (defect != 0.0 && geom.length > 0.0) {
    double s_here = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      s_here += geom.segment_length(i - 1);
      alpha[i] -= defect * (s_here / geom.length);
    }
  }
  return alpha;
}

}  // namespace curveflow
