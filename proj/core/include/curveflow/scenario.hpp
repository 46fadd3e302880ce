#pragma once

#include <cstddef>
#include <string>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Built-in initial curves. All generators emit counterclockwise embedded
// curves. The nonuniform ellipse clusters the parameter through
// u -> u + gamma * sin(2*pi*u) / (2*pi), |gamma| < 1, so segment lengths vary
// strongly while the shape stays an ellipse. The dumbbell is resampled to
// uniform arc length so mesh degradation is purely dynamic.
struct Scenario {
  enum class Kind { Circle, Ellipse, NonuniformEllipse, Dumbbell, Star, File };

  Kind kind = Kind::Circle;
  double r0 = 1.0;        // circle
  double a = 2.0;         // ellipse semi-axes
  double b = 1.0;
  double gamma = 0.5;     // clustering strength
  double delta = 0.25;    // dumbbell neck half-width
  int petals = 5;         // star
  double amplitude = 0.3;
  std::string path;       // curve CSV for Kind::File

  std::string name() const;
  void validate() const;  // throws ValidationError, fields prefixed "scenario."
  PlanarCurve generate(std::size_t n) const;
};

}  // namespace curveflow
