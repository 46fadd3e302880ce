#include "curveflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Map to (-pi, pi].
double wrap_to_pi(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

std::vector<double> chord_angles(const PlanarCurve& curve) {
  const std::size_t n = curve.size();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 c = curve.chord(i);
    phi[i] = std::atan2(c.y, c.x);
  }
  return phi;
}

// Signed exterior angle at node i between the incoming and outgoing chords.
std::vector<double> exterior_angles(const std::vector<double>& phi_raw) {
  const std::size_t n = phi_raw.size();
  std::vector<double> ext(n);
  for (std::size_t i = 0; i < n; ++i) {
    ext[i] = wrap_to_pi(phi_raw[i] - phi_raw[(i + n - 1) % n]);
  }
  return ext;
}

}  // namespace

PlanarCurve::PlanarCurve(std::vector<Vec2> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 4) {
    throw InvalidCurve("a closed curve needs at least 4 nodes, got " +
                       std::to_string(nodes_.size()));
  }
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 c = nodes_[(i + 1) % n] - nodes_[i];
    if (!(c.norm() > 0.0)) throw DegenerateSegment(i);
  }
}

std::vector<double> compute_local_lengths(const PlanarCurve& curve) {
  const std::size_t n = curve.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = static_cast<double>(n) * curve.chord(i).norm();
  }
  return g;
}

std::vector<double> compute_tangent_angles(const PlanarCurve& curve) {
  const std::size_t n = curve.size();
  const std::vector<double> phi_raw = chord_angles(curve);

  std::vector<double> phi(n);  // unwrapped segment directions
  phi[0] = phi_raw[0];
  for (std::size_t i = 1; i < n; ++i) {
    phi[i] = phi[i - 1] + wrap_to_pi(phi_raw[i] - phi_raw[i - 1]);
  }

  std::vector<double> nu(n);
  // The segment preceding node 0 is segment n-1 continued backwards across
  // the seam: its unwrapped direction is phi[0] minus the exterior angle.
  nu[0] = phi[0] - 0.5 * wrap_to_pi(phi_raw[0] - phi_raw[n - 1]);
  for (std::size_t i = 1; i < n; ++i) {
    nu[i] = 0.5 * (phi[i - 1] + phi[i]);
  }
  return nu;
}

std::vector<double> compute_curvature(const PlanarCurve& curve) {
  const std::size_t n = curve.size();
  const std::vector<double> ext = exterior_angles(chord_angles(curve));
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        0.5 * (curve.chord((i + n - 1) % n).norm() + curve.chord(i).norm());
    k[i] = ext[i] / w;
  }
  return k;
}

double total_length(std::span<const double> local_lengths) {
  double sum = 0.0;
  for (double g : local_lengths) sum += g;
  return sum / static_cast<double>(local_lengths.size());
}

double total_length(const DiscreteGeometry& geom) { return total_length(geom.local_length); }

double enclosed_area(const PlanarCurve& curve) {
  const std::size_t n = curve.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(curve[i], curve[(i + 1) % n]);
  }
  return 0.5 * twice;
}

int turning_number(const PlanarCurve& curve) {
  const std::vector<double> ext = exterior_angles(chord_angles(curve));
  double total = 0.0;
  for (double e : ext) total += e;
  return static_cast<int>(std::lround(total / kTwoPi));
}

DiscreteGeometry analyze(const PlanarCurve& curve) {
  DiscreteGeometry geom;
  geom.local_length = compute_local_lengths(curve);
  geom.tangent_angle = compute_tangent_angles(curve);
  geom.curvature = compute_curvature(curve);
  geom.length = total_length(geom.local_length);
  geom.area = enclosed_area(curve);
  geom.turning_number = turning_number(curve);
  return geom;
}

double curve_average(std::span<const double> values, std::span<const double> node_weights,
                     double length) {
  if (values.size() != node_weights.size()) {
    throw InconsistentLengths("curve_average: " + std::to_string(values.size()) +
                              " values for " + std::to_string(node_weights.size()) + " weights");
  }
  if (!(length > 0.0)) throw LengthZero("curve_average: curve has zero length");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += values[i] * node_weights[i];
  return sum / length;
}

std::vector<double> node_weights(const DiscreteGeometry& geom) {
  std::vector<double> w(geom.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = geom.node_weight(i);
  return w;
}

double curve_average(std::span<const double> values, const DiscreteGeometry& geom) {
  const std::vector<double> w = node_weights(geom);
  return curve_average(values, w, geom.length);
}

PlanarCurve resample_uniform(const PlanarCurve& curve, std::size_t n_out) {
  if (n_out < 4) {
    throw InvalidCurve("resample_uniform: need at least 4 output nodes, got " +
                       std::to_string(n_out));
  }
  const std::size_t n = curve.size();
  std::vector<double> s(n + 1, 0.0);  // path position of each node
  for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + curve.chord(i).norm();
  const double total = s[n];

  std::vector<Vec2> out(n_out);
  std::size_t seg = 0;
  for (std::size_t j = 0; j < n_out; ++j) {
    const double target = total * static_cast<double>(j) / static_cast<double>(n_out);
    while (seg + 1 < n && s[seg + 1] < target) ++seg;
    const double t = (target - s[seg]) / (s[seg + 1] - s[seg]);
    const Vec2 a = curve[seg];
    const Vec2 b = curve[(seg + 1) % n];
    out[j] = a + t * (b - a);
  }
  return PlanarCurve(std::move(out));
}

}  // namespace curveflow
