#pragma once

#include <filesystem>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Curve CSV: header "x,y", one node per line, closure implicit, LF endings.
PlanarCurve read_curve_csv(const std::filesystem::path& path);
void write_curve_csv(const std::filesystem::path& path, const PlanarCurve& curve);

}  // namespace curveflow
