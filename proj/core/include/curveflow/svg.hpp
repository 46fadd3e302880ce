#pragma once

#include <filesystem>
#include <span>

#include "curveflow/solver.hpp"

namespace curveflow {

struct SvgStyle {
  double size = 640.0;      // square canvas, px
  bool node_markers = true; // dots on grid points, makes clustering visible
  double margin = 0.06;     // fraction of the viewport
};

// One SVG per snapshot under dir/, all sharing the viewport that bounds the
// whole sequence, plus overlay.svg with every curve and the initial one bold.
void write_frames(const std::filesystem::path& dir, std::span<const Snapshot> snapshots,
                  const SvgStyle& style = {});

}  // namespace curveflow
