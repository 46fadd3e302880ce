#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curveflow {

// Base type for everything the library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

// --- geometry ---

// Two consecutive nodes coincide; the curve is not repaired, the caller must fix its input.
struct DegenerateSegment : Error {
  explicit DegenerateSegment(std::size_t segment)
      : Error("degenerate segment " + std::to_string(segment) + ": consecutive nodes coincide"),
        segment(segment) {}
  std::size_t segment;
};

struct InvalidCurve : Error {
  using Error::Error;
};

struct LengthZero : Error {
  using Error::Error;
};

struct InconsistentLengths : Error {
  using Error::Error;
};

// --- velocity models ---

struct SingularDerivative : Error {
  using Error::Error;
};

// The curvature coefficient of the speed law lost positivity.
struct NonParabolic : Error {
  using Error::Error;
};

// --- redistribution ---

struct WrongStrategy : Error {
  using Error::Error;
};

struct CompatibilityViolation : Error {
  using Error::Error;
};

// --- linear algebra / time stepping ---

struct SingularMatrix : Error {
  using Error::Error;
};

struct MeshCollapse : Error {
  using Error::Error;
};

// Signals approach to the extinction time, not a bug.
struct CurvatureBlowup : Error {
  using Error::Error;
};

struct NonFiniteState : Error {
  using Error::Error;
};

// --- configuration / CLI ---

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  ValidationError(std::string field_, const std::string& why)
      : Error("invalid field '" + field_ + "': " + why), field(std::move(field_)) {}
  std::string field;
};

struct NoExactSolution : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace curveflow
