#include "curveflow/scenario.hpp"

#include <cmath>
#include <numbers>

#include "curveflow/curve_io.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The dumbbell is a Cassini oval: two lobes of tip radius kTipRadius joined
// by a waist of half-width delta. It stays a single concave-necked curve for
// delta < kTipRadius / sqrt(3).
constexpr double kTipRadius = 1.5;

std::vector<Vec2> polar_curve(std::size_t n, const auto& radius_of) {
  std::vector<Vec2> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double r = radius_of(phi);
    nodes[i] = {r * std::cos(phi), r * std::sin(phi)};
  }
  return nodes;
}

}  // namespace

std::string Scenario::name() const {
  switch (kind) {
    case Kind::Circle: return "circle";
    case Kind::Ellipse: return "ellipse";
    case Kind::NonuniformEllipse: return "nonuniform_ellipse";
    case Kind::Dumbbell: return "dumbbell";
    case Kind::Star: return "star";
    case Kind::File: return "file";
  }
  return "unknown";
}

void Scenario::validate() const {
  switch (kind) {
    case Kind::Circle:
      if (!(r0 > 0.0)) throw ValidationError("scenario.r0", "radius must be positive");
      break;
    case Kind::NonuniformEllipse:
      if (!(std::abs(gamma) < 1.0)) {
        throw ValidationError("scenario.gamma", "clustering strength needs |gamma| < 1");
      }
      [[fallthrough]];
    case Kind::Ellipse:
      if (!(a > 0.0)) throw ValidationError("scenario.a", "semi-axis must be positive");
      if (!(b > 0.0)) throw ValidationError("scenario.b", "semi-axis must be positive");
      break;
    case Kind::Dumbbell:
      if (!(delta > 0.0) || !(delta < kTipRadius / std::numbers::sqrt3)) {
        throw ValidationError("scenario.delta", "neck half-width must lie in (0, " +
                                                    std::to_string(kTipRadius /
                                                                   std::numbers::sqrt3) +
                                                    ")");
      }
      break;
    case Kind::Star:
      if (!(r0 > 0.0)) throw ValidationError("scenario.r0", "radius must be positive");
      if (petals < 2) throw ValidationError("scenario.petals", "need at least 2 petals");
      if (!(std::abs(amplitude) < 1.0)) {
        throw ValidationError("scenario.amplitude", "petal amplitude needs |amplitude| < 1");
      }
      break;
    case Kind::File:
      if (path.empty()) throw ValidationError("scenario.path", "missing curve file path");
      break;
  }
}

PlanarCurve Scenario::generate(std::size_t n) const {
  validate();
  switch (kind) {
    case Kind::Circle:
      return PlanarCurve(polar_curve(n, [&](double) { return r0; }));
    case Kind::Ellipse: {
      std::vector<Vec2> nodes(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        nodes[i] = {a * std::cos(u), b * std::sin(u)};
      }
      return PlanarCurve(std::move(nodes));
    }
    case Kind::NonuniformEllipse: {
      std::vector<Vec2> nodes(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n);
        const double v = kTwoPi * (u + gamma * std::sin(kTwoPi * u) / kTwoPi);
        nodes[i] = {a * std::cos(v), b * std::sin(v)};
      }
      return PlanarCurve(std::move(nodes));
    }
    case Kind::Dumbbell: {
      // r(phi)^2 = c^2 cos(2 phi) + sqrt(c^4 cos^2(2 phi) + delta^2 R^2)
      // with c^2 = (R^2 - delta^2) / 2 hits radius R at phi = 0 and delta at
      // phi = pi/2. Drawn densely, then resampled to uniform arc length.
      const double c2 = 0.5 * (kTipRadius * kTipRadius - delta * delta);
      const double dr = delta * kTipRadius;
      const auto radius_of = [&](double phi) {
        const double lobe = c2 * std::cos(2.0 * phi);
        return std::sqrt(lobe + std::sqrt(lobe * lobe + dr * dr));
      };
      const std::size_t dense = std::max<std::size_t>(4096, 8 * n);
      return resample_uniform(PlanarCurve(polar_curve(dense, radius_of)), n);
    }
    case Kind::Star:
      return PlanarCurve(polar_curve(n, [&](double phi) {
        return r0 * (1.0 + amplitude * std::cos(static_cast<double>(petals) * phi));
      }));
    case Kind::File:
      // n applies to the generated shapes only; a file is taken as stored.
      return read_curve_csv(path);
  }
  throw InvalidArgument("unhandled scenario kind");
}

}  // namespace curveflow
