#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "curveflow/errors.hpp"
#include "curveflow/velocity.hpp"

using namespace curveflow;

namespace {

constexpr double kPi = std::numbers::pi;

// Central differences, independent of the analytic derivative paths.
VelocityModel::Derivatives numeric_derivatives(const VelocityModel& model, Vec2 pos, double k,
                                               double angle) {
  const double h = 1e-6;
  VelocityModel::Derivatives d;
  d.d_curvature =
      (model.normal_speed(pos, k + h, angle) - model.normal_speed(pos, k - h, angle)) / (2 * h);
  d.d_angle =
      (model.normal_speed(pos, k, angle + h) - model.normal_speed(pos, k, angle - h)) / (2 * h);
  d.d_position.x = (model.normal_speed({pos.x + h, pos.y}, k, angle) -
                    model.normal_speed({pos.x - h, pos.y}, k, angle)) /
                   (2 * h);
  d.d_position.y = (model.normal_speed({pos.x, pos.y + h}, k, angle) -
                    model.normal_speed({pos.x, pos.y - h}, k, angle)) /
                   (2 * h);
  return d;
}

void check_close(double got, double want, double rel = 1e-5, double abs = 1e-8) {
  CHECK(std::abs(got - want) <= rel * std::abs(want) + abs);
}

}  // namespace

TEST_SUITE("velocity") {

TEST_CASE("mean curvature law is the identity in curvature") {
  const VelocityModel model = VelocityModel::mean_curvature();
  for (double k : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
    CHECK(model.normal_speed({0.3, -1.2}, k, 0.9) == k);
    const auto d = model.derivatives({0.3, -1.2}, k, 0.9);
    CHECK(d.d_curvature == 1.0);
    CHECK(d.d_angle == 0.0);
    CHECK(d.d_position.x == 0.0);
    CHECK(d.d_position.y == 0.0);
  }
}

TEST_CASE("power law with unit exponent degenerates to the identity") {
  const VelocityModel model = VelocityModel::power_law(1.0, 1e-3);
  for (double k : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
    CHECK(model.normal_speed({0, 0}, k, 0.0) == k);
  }
}

TEST_CASE("regularized power law value and symmetry") {
  const double sigma = 1.0 / 3.0;
  const double eps = 1e-4;
  const VelocityModel model = VelocityModel::power_law(sigma, eps);

  CHECK(model.normal_speed({0, 0}, 0.0, 0.0) == 0.0);

  // frozen via cbrt, not via the pow-based implementation path
  const double expected = std::cbrt(1.0 + eps) - std::cbrt(eps);
  CHECK(model.normal_speed({0, 0}, 1.0, 0.0) == doctest::Approx(expected).epsilon(1e-14));

  for (double k : {0.03, 0.7, 2.5, 40.0}) {
    const double plus = model.normal_speed({1, 2}, k, 0.4);
    const double minus = model.normal_speed({1, 2}, -k, 0.4);
    CHECK(plus > 0.0);
    CHECK(minus == -plus);
  }

  // monotone in k, so the implicit diffusion coefficient stays positive
  const auto d = model.derivatives({0, 0}, 0.5, 0.0);
  CHECK(d.d_curvature > 0.0);
  CHECK(d.d_angle == 0.0);
}

TEST_CASE("power law derivative matches central differences") {
  for (double sigma : {1.0 / 3.0, 0.6, 1.0}) {
    const VelocityModel model = VelocityModel::power_law(sigma, 1e-3);
    for (double k : {-1.8, -0.2, 0.05, 0.9, 12.0}) {
      const auto analytic = model.derivatives({0, 0}, k, 0.0);
      const auto numeric = numeric_derivatives(model, {0, 0}, k, 0.0);
      check_close(analytic.d_curvature, numeric.d_curvature);
    }
  }
}

TEST_CASE("analytic partials survive a randomized sweep") {
  const VelocityModel models[] = {
      VelocityModel::mean_curvature(),
      VelocityModel::power_law(1.0 / 3.0, 1e-3),
      VelocityModel::power_law(0.6, 1e-3),
      VelocityModel::anisotropic(ScalarField::cosine(1.2, 0.4, 2), ScalarField::ramp(0.1, 0.3, -0.2)),
  };
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> pos_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> k_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> angle_dist(-7.0, 7.0);
  for (const VelocityModel& model : models) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec2 pos{pos_dist(rng), pos_dist(rng)};
      // keep clear of the k = 0 kink where finite differences degrade
      double k = k_dist(rng);
      while (std::abs(k) < 1e-2) k = k_dist(rng);
      const double angle = angle_dist(rng);
      const auto analytic = model.derivatives(pos, k, angle);
      const auto numeric = numeric_derivatives(model, pos, k, angle);
      check_close(analytic.d_curvature, numeric.d_curvature);
      check_close(analytic.d_angle, numeric.d_angle);
      check_close(analytic.d_position.x, numeric.d_position.x);
      check_close(analytic.d_position.y, numeric.d_position.y);
      CHECK(analytic.d_curvature > 0.0);  // parabolicity away from the kink
    }
  }
}

TEST_CASE("unregularized sublinear power law is singular at zero curvature") {
  const VelocityModel model = VelocityModel::power_law(0.5, 0.0);
  CHECK(model.normal_speed({0, 0}, 0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(model.derivatives({0, 0}, 0.0, 0.0), SingularDerivative);
  CHECK_NOTHROW(model.derivatives({0, 0}, 0.3, 0.0));
}

TEST_CASE("anisotropic linear law: values and analytic derivatives") {
  // beta = (1 + 0.3 cos(3 angle)) k + (0.5 + 0.2 x - 0.1 y)
  const VelocityModel model = VelocityModel::anisotropic(ScalarField::cosine(1.0, 0.3, 3),
                                                         ScalarField::ramp(0.5, 0.2, -0.1));
  const Vec2 pos{0.7, -0.4};
  const double k = 1.3, angle = 0.9;
  const double a = 1.0 + 0.3 * std::cos(3 * angle);
  const double c = 0.5 + 0.2 * pos.x - 0.1 * pos.y;
  CHECK(model.normal_speed(pos, k, angle) == doctest::Approx(a * k + c).epsilon(1e-15));

  const auto d = model.derivatives(pos, k, angle);
  CHECK(d.d_curvature == doctest::Approx(a).epsilon(1e-15));
  CHECK(d.d_angle == doctest::Approx(-0.9 * std::sin(3 * angle) * k).epsilon(1e-14));
  CHECK(d.d_position.x == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d.d_position.y == doctest::Approx(-0.1).epsilon(1e-15));

  const auto numeric = numeric_derivatives(model, pos, k, angle);
  check_close(d.d_curvature, numeric.d_curvature);
  check_close(d.d_angle, numeric.d_angle);
  check_close(d.d_position.x, numeric.d_position.x);
  check_close(d.d_position.y, numeric.d_position.y);
}

TEST_CASE("scalar field shapes") {
  const ScalarField c = ScalarField::constant(2.5);
  CHECK(c.value({9, 9}, 1.0) == 2.5);
  CHECK(c.d_angle({9, 9}, 1.0) == 0.0);
  CHECK(c.gradient({9, 9}, 1.0).x == 0.0);

  const ScalarField cosf = ScalarField::cosine(1.0, 0.25, 4);
  CHECK(cosf.value({0, 0}, kPi / 4) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cosf.d_angle({0, 0}, kPi / 8) == doctest::Approx(-1.0).epsilon(1e-14));

  const ScalarField r = ScalarField::ramp(1.0, 2.0, 3.0);
  CHECK(r.value({1, 1}, 0.0) == 6.0);
  CHECK(r.gradient({5, -5}, 0.0).x == 2.0);
  CHECK(r.gradient({5, -5}, 0.0).y == 3.0);
}

TEST_CASE("construction rejects laws that cannot diffuse") {
  CHECK_THROWS_AS(VelocityModel::power_law(0.0), ValidationError);
  CHECK_THROWS_AS(VelocityModel::power_law(-0.5), ValidationError);
  CHECK_THROWS_AS(VelocityModel::power_law(1.5), ValidationError);
  CHECK_THROWS_AS(VelocityModel::power_law(0.5, -1e-9), ValidationError);
  CHECK_THROWS_AS(
      VelocityModel::anisotropic(ScalarField::constant(0.0), ScalarField::constant(0.0)),
      ValidationError);
  CHECK_THROWS_AS(
      VelocityModel::anisotropic(ScalarField::constant(-1.0), ScalarField::constant(0.0)),
      ValidationError);
  // cosine coefficient dipping to zero somewhere on the circle
  CHECK_THROWS_AS(
      VelocityModel::anisotropic(ScalarField::cosine(1.0, 1.0, 2), ScalarField::constant(0.0)),
      ValidationError);
}

TEST_CASE("position-dependent coefficient is caught where it degenerates") {
  // a = 1 - x vanishes at x = 1; evaluating the diffusion coefficient there throws
  const VelocityModel model =
      VelocityModel::anisotropic(ScalarField::ramp(1.0, -1.0, 0.0), ScalarField::constant(0.0));
  CHECK_NOTHROW(model.derivatives({0.0, 0.0}, 1.0, 0.0));
  CHECK_THROWS_AS(model.derivatives({2.0, 0.0}, 1.0, 0.0), NonParabolic);
}

}  // TEST_SUITE("velocity")
