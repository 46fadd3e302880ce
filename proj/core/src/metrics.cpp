#include "curveflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curveflow {

namespace {

// Dual-cell weights of a closed polygon, normalized to sum to 1.
std::vector<double> node_share(const std::vector<Vec2>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> chord(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    chord[i] = (nodes[(i + 1) % n] - nodes[i]).norm();
    total += chord[i];
  }
  if (!(total > 0.0)) throw LengthZero("polygon has zero length");
  std::vector<double> share(n);
  for (std::size_t i = 0; i < n; ++i) {
    share[i] = 0.5 * (chord[(i + n - 1) % n] + chord[i]) / total;
  }
  return share;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double directed_hausdorff(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
  const std::size_t m = to.size();
  double worst = 0.0;
  for (const Vec2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % m]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

MeshQualityMetrics mesh_quality(std::span<const double> segment_lengths) {
  const std::size_t n = segment_lengths.size();
  if (n == 0) throw InvalidArgument("mesh quality of an empty mesh");
  double total = 0.0;
  double shortest = std::numeric_limits<double>::infinity();
  double longest = 0.0;
  for (double h : segment_lengths) {
    if (!(h > 0.0)) throw InvalidArgument("mesh quality needs positive segment lengths");
    total += h;
    shortest = std::min(shortest, h);
    longest = std::max(longest, h);
  }
  MeshQualityMetrics q;
  q.ratio = longest / shortest;
  double var = 0.0;
  for (double h : segment_lengths) {
    const double rel = h * static_cast<double>(n) / total - 1.0;
    q.dispersion = std::max(q.dispersion, std::abs(rel));
    var += rel * rel;
  }
  q.stdev = std::sqrt(var / static_cast<double>(n));
  return q;
}

Vec2 weighted_centroid(const std::vector<Vec2>& nodes) {
  const std::vector<double> share = node_share(nodes);
  Vec2 c;
  for (std::size_t i = 0; i < nodes.size(); ++i) c += share[i] * nodes[i];
  return c;
}

double fitted_radius(const std::vector<Vec2>& nodes) {
  const std::vector<double> share = node_share(nodes);
  const Vec2 c = weighted_centroid(nodes);
  double r = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) r += share[i] * (nodes[i] - c).norm();
  return r;
}

AxisFit fit_axes(const std::vector<Vec2>& nodes) {
  const Vec2 c = weighted_centroid(nodes);
  AxisFit fit;
  fit.minor = std::numeric_limits<double>::infinity();
  for (const Vec2& p : nodes) {
    const double d = (p - c).norm();
    fit.major = std::max(fit.major, d);
    fit.minor = std::min(fit.minor, d);
  }
  return fit;
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("hausdorff distance of an empty polygon");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace curveflow
