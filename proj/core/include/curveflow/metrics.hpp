#pragma once

#include <span>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Uniformity measures of a segment-length distribution. ratio is
// max/min, dispersion is max |n*h_i/L - 1|, stdev the standard deviation of
// n*h_i/L. A uniform mesh has ratio 1 and dispersion 0.
struct MeshQualityMetrics {
  double ratio = 1.0;
  double dispersion = 0.0;
  double stdev = 0.0;
};

MeshQualityMetrics mesh_quality(std::span<const double> segment_lengths);

// Arc-length weighted centroid and mean distance from it.
Vec2 weighted_centroid(const std::vector<Vec2>& nodes);
double fitted_radius(const std::vector<Vec2>& nodes);

// max and min node distance from the weighted centroid; for an axis-aligned
// ellipse these approach the semi-axes.
struct AxisFit {
  double major = 0.0;
  double minor = 0.0;
  double ratio() const { return major / minor; }
};
AxisFit fit_axes(const std::vector<Vec2>& nodes);

// Symmetric Hausdorff distance between two closed polygons (nodes of one
// against segments of the other, both ways).
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace curveflow
