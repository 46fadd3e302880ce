#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "curveflow/errors.hpp"

namespace curveflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Closed polygonal curve. Node i connects to node (i+1) mod n; the closing
// segment is implicit. Construction validates the shape once: at least 4
// nodes, no two consecutive nodes coincide. Degenerate input is rejected,
// never repaired.
class PlanarCurve {
 public:
  explicit PlanarCurve(std::vector<Vec2> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const Vec2& operator[](std::size_t i) const { return nodes_[i]; }
  Vec2 chord(std::size_t i) const {  // node i -> node i+1
    return nodes_[(i + 1) % nodes_.size()] - nodes_[i];
  }

 private:
  std::vector<Vec2> nodes_;
};

// Discrete intrinsic data of a closed curve with parameter u_i = i/n.
// local_length[i] = n * |x_{i+1} - x_i| is the metric of segment i, so the
// total length is sum(local_length)/n and a uniform mesh has
// local_length[i] == length for all i.
struct DiscreteGeometry {
  std::vector<double> local_length;   // per segment
  std::vector<double> tangent_angle;  // per node, unwrapped along the curve
  std::vector<double> curvature;      // per node
  double length = 0.0;
  double area = 0.0;                  // signed; positive for counterclockwise
  int turning_number = 0;

  std::size_t size() const { return local_length.size(); }
  double segment_length(std::size_t i) const {
    return local_length[i] / static_cast<double>(local_length.size());
  }
  // Dual cell around node i: half of each adjacent segment.
  double node_weight(std::size_t i) const {
    const std::size_t n = local_length.size();
    return (local_length[(i + n - 1) % n] + local_length[i]) / (2.0 * static_cast<double>(n));
  }
};

std::vector<double> compute_local_lengths(const PlanarCurve& curve);

// Unwrapped node tangent angles: each node angle is the average of the two
// adjacent chord directions after a single forward 2*pi-jump correction
// sweep, so consecutive angles differ by less than pi and the increment over
// one period telescopes to 2*pi*turning_number.
std::vector<double> compute_tangent_angles(const PlanarCurve& curve);

// Curvature from tangent direction increments: the signed exterior angle at
// node i divided by the dual-cell arc length. Exactly zero on collinear
// triples; positive on counterclockwise convex arcs.
std::vector<double> compute_curvature(const PlanarCurve& curve);

double total_length(std::span<const double> local_lengths);
double total_length(const DiscreteGeometry& geom);
double enclosed_area(const PlanarCurve& curve);  // shoelace, signed
int turning_number(const PlanarCurve& curve);

DiscreteGeometry analyze(const PlanarCurve& curve);

// Arc-length weighted average over the curve using dual-cell node weights.
double curve_average(std::span<const double> values, const DiscreteGeometry& geom);
double curve_average(std::span<const double> values, std::span<const double> node_weights,
                     double length);

std::vector<double> node_weights(const DiscreteGeometry& geom);

// Equal arc-length resampling along the polygon, keeping node 0 anchored.
PlanarCurve resample_uniform(const PlanarCurve& curve, std::size_t n_out);

}  // namespace curveflow
