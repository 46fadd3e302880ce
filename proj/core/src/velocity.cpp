#include "curveflow/velocity.hpp"

#include <cmath>

namespace curveflow {

ScalarField ScalarField::constant(double value) {
  ScalarField f;
  f.kind = FieldKind::Constant;
  f.base = value;
  return f;
}

ScalarField ScalarField::cosine(double base, double delta, int mode) {
  ScalarField f;
  f.kind = FieldKind::Cosine;
  f.base = base;
  f.delta = delta;
  f.mode = mode;
  return f;
}

ScalarField ScalarField::ramp(double base, double gx, double gy) {
  ScalarField f;
  f.kind = FieldKind::Ramp;
  f.base = base;
  f.gx = gx;
  f.gy = gy;
  return f;
}

double ScalarField::value(Vec2 pos, double angle) const {
  switch (kind) {
    case FieldKind::Constant: return base;
    case FieldKind::Cosine: return base + delta * std::cos(mode * angle);
    case FieldKind::Ramp: return base + gx * pos.x + gy * pos.y;
  }
  return base;
}

double ScalarField::d_angle(Vec2, double angle) const {
  if (kind == FieldKind::Cosine) return -delta * mode * std::sin(mode * angle);
  return 0.0;
}

Vec2 ScalarField::gradient(Vec2, double) const {
  if (kind == FieldKind::Ramp) return {gx, gy};
  return {0.0, 0.0};
}

VelocityModel VelocityModel::mean_curvature() {
  VelocityModel m;
  m.kind_ = ModelKind::MeanCurvature;
  return m;
}

VelocityModel VelocityModel::power_law(double sigma, double eps) {
  if (!(sigma > 0.0) || sigma > 1.0) {
    throw ValidationError("model.sigma", "power law exponent must lie in (0, 1]");
  }
  if (!(eps >= 0.0)) throw ValidationError("model.eps", "regularization must be >= 0");
  VelocityModel m;
  m.kind_ = ModelKind::PowerLaw;
  m.sigma_ = sigma;
  m.eps_ = eps;
  return m;
}

VelocityModel VelocityModel::anisotropic(ScalarField a, ScalarField c) {
  // Positivity of the curvature coefficient is what makes the law parabolic.
  // Constant and cosine fields admit a global check; ramps are checked at
  // every evaluation instead.
  if (a.kind == FieldKind::Constant && !(a.base > 0.0)) {
    throw ValidationError("model.a", "curvature coefficient must be positive");
  }
  if (a.kind == FieldKind::Cosine && !(a.base - std::abs(a.delta) > 0.0)) {
    throw ValidationError("model.a", "cosine coefficient dips to zero: need base > |delta|");
  }
  VelocityModel m;
  m.kind_ = ModelKind::AnisotropicLinear;
  m.a_ = a;
  m.c_ = c;
  return m;
}

double VelocityModel::normal_speed(Vec2 pos, double curvature, double angle) const {
  switch (kind_) {
    case ModelKind::MeanCurvature:
      return curvature;
    case ModelKind::PowerLaw: {
      if (sigma_ == 1.0) return curvature;  // the eps terms cancel identically
      if (curvature == 0.0) return 0.0;
      const double m = std::abs(curvature);
      const double v = std::pow(m + eps_, sigma_) - std::pow(eps_, sigma_);
      return std::copysign(v, curvature);
    }
    case ModelKind::AnisotropicLinear: {
      const double a = a_.value(pos, angle);
      if (!(a > 0.0)) throw NonParabolic("curvature coefficient <= 0 at evaluation point");
      return a * curvature + c_.value(pos, angle);
    }
  }
  return 0.0;
}

VelocityModel::Derivatives VelocityModel::derivatives(Vec2 pos, double curvature,
                                                      double angle) const {
  switch (kind_) {
    case ModelKind::MeanCurvature:
      return {1.0, 0.0, {0.0, 0.0}};
    case ModelKind::PowerLaw: {
      if (sigma_ == 1.0) return {1.0, 0.0, {0.0, 0.0}};
      const double m = std::abs(curvature);
      if (m == 0.0 && eps_ == 0.0) {
        throw SingularDerivative("power law derivative is unbounded at k = 0 without regularization");
      }
      return {sigma_ * std::pow(m + eps_, sigma_ - 1.0), 0.0, {0.0, 0.0}};
    }
    case ModelKind::AnisotropicLinear: {
      const double a = a_.value(pos, angle);
      if (!(a > 0.0)) throw NonParabolic("curvature coefficient <= 0 at evaluation point");
      Derivatives d;
      d.d_curvature = a;
      d.d_angle = a_.d_angle(pos, angle) * curvature + c_.d_angle(pos, angle);
      const Vec2 ga = a_.gradient(pos, angle);
      const Vec2 gc = c_.gradient(pos, angle);
      d.d_position = {ga.x * curvature + gc.x, ga.y * curvature + gc.y};
      return d;
    }
  }
  return {};
}

}  // namespace curveflow
