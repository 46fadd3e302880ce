#pragma once

#include <cstddef>
#include <vector>

#include "curveflow/errors.hpp"

namespace curveflow {

// Row i reads sub[i]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1] = rhs[i] with
// cyclic index arithmetic, so sub[0] sits in the top-right corner and
// sup[n-1] in the bottom-left one.
struct CyclicTridiagonalSystem {
  std::vector<double> sub, diag, sup, rhs;

  std::size_t size() const { return diag.size(); }
  // Weak row diagonal dominance with at least one strict row. Not required
  // for solving; callers may log when it fails.
  bool diagonally_dominant() const;
};

// Thomas elimination plus a rank-one corner correction. Throws SingularMatrix
// on a vanishing pivot or when the computed solution fails a residual check.
std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& system);

}  // namespace curveflow
