#pragma once

#include "curveflow/geometry.hpp"

namespace curveflow {

enum class FieldKind { Constant, Cosine, Ramp };

// Closed-form scalar coefficient field over position and tangent direction.
//   Constant: base
//   Cosine:   base + delta * cos(mode * angle)
//   Ramp:     base + gx * x + gy * y
struct ScalarField {
  FieldKind kind = FieldKind::Constant;
  double base = 1.0;
  double delta = 0.0;
  int mode = 1;
  double gx = 0.0;
  double gy = 0.0;

  static ScalarField constant(double value);
  static ScalarField cosine(double base, double delta, int mode);
  static ScalarField ramp(double base, double gx, double gy);

  double value(Vec2 pos, double angle) const;
  double d_angle(Vec2 pos, double angle) const;
  Vec2 gradient(Vec2 pos, double angle) const;
};

enum class ModelKind { MeanCurvature, PowerLaw, AnisotropicLinear };

// Normal speed law v = beta(position, curvature, tangent angle).
//   MeanCurvature:     beta = k
//   PowerLaw:          beta = sign(k) * ((|k| + eps)^sigma - eps^sigma)
//   AnisotropicLinear: beta = a(x, angle) * k + c(x, angle)
// The power law is regularized so beta(0) = 0 and beta is odd in k; sigma = 1
// reduces to MeanCurvature identically, for any eps.
class VelocityModel {
 public:
  struct Derivatives {
    double d_curvature = 0.0;  // strictly positive on a parabolic law
    double d_angle = 0.0;
    Vec2 d_position;
  };

  static VelocityModel mean_curvature();
  static VelocityModel power_law(double sigma, double eps = 1e-4);
  static VelocityModel anisotropic(ScalarField a, ScalarField c);

  double normal_speed(Vec2 pos, double curvature, double angle) const;
  // Throws SingularDerivative for the unregularized power law at k = 0.
  Derivatives derivatives(Vec2 pos, double curvature, double angle) const;

  ModelKind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  double regularization() const { return eps_; }
  const ScalarField& coefficient() const { return a_; }
  const ScalarField& forcing() const { return c_; }

 private:
  VelocityModel() = default;
  ModelKind kind_ = ModelKind::MeanCurvature;
  double sigma_ = 1.0;
  double eps_ = 0.0;
  ScalarField a_;
  ScalarField c_;
};

}  // namespace curveflow
