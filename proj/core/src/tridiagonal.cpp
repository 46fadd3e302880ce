#include "curveflow/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

namespace curveflow {

namespace {

// Plain Thomas elimination; diag is consumed. No pivoting, so callers keep
// matrices away from hard zero pivots.
void thomas(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
            std::vector<double>& x) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw SingularMatrix("zero pivot in tridiagonal elimination");
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    x[i] -= m * x[i - 1];
  }
  if (diag[n - 1] == 0.0) throw SingularMatrix("zero pivot in tridiagonal elimination");
  x[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (x[i] - sup[i] * x[i + 1]) / diag[i];
  }
}

}  // namespace

bool CyclicTridiagonalSystem::diagonally_dominant() const {
  bool strict_somewhere = false;
  for (std::size_t i = 0; i < size(); ++i) {
    const double off = std::abs(sub[i]) + std::abs(sup[i]);
    if (std::abs(diag[i]) < off) return false;
    if (std::abs(diag[i]) > off) strict_somewhere = true;
  }
  return strict_somewhere;
}

std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& system) {
  const std::size_t n = system.size();
  if (n < 3) throw InvalidArgument("cyclic tridiagonal system needs at least 3 rows");
  if (system.sub.size() != n || system.sup.size() != n || system.rhs.size() != n) {
    throw InvalidArgument("cyclic tridiagonal system with mismatched band sizes");
  }

  // Split off the two corner entries as a rank-one term u v^T with
  // u = (gamma, 0, ..., 0, sup[n-1]), v = (1, 0, ..., 0, sub[0]/gamma),
  // solve the remaining plain tridiagonal system twice and recombine.
  const double corner_bl = system.sup[n - 1];
  const double corner_tr = system.sub[0];
  const double gamma = system.diag[0] != 0.0 ? -system.diag[0] : 1.0;

  std::vector<double> diag = system.diag;
  diag[0] -= gamma;
  diag[n - 1] -= corner_bl * corner_tr / gamma;

  std::vector<double> y = system.rhs;
  {
    std::vector<double> sub = system.sub, d = diag, sup = system.sup;
    thomas(sub, d, sup, y);
  }
  std::vector<double> z(n, 0.0);
  z[0] = gamma;
  z[n - 1] = corner_bl;
  {
    std::vector<double> sub = system.sub, d = diag, sup = system.sup;
    thomas(sub, d, sup, z);
  }

  const double vy = y[0] + corner_tr / gamma * y[n - 1];
  const double vz = 1.0 + z[0] + corner_tr / gamma * z[n - 1];
  if (std::abs(vz) < 1e-14 * (1.0 + std::abs(z[0]))) {
    throw SingularMatrix("rank-one corner correction is singular");
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - z[i] * (vy / vz);

  // A cheap residual check; anything large means the elimination ran through
  // a numerically singular matrix.
  double norm_a = 0.0, norm_x = 0.0, norm_b = 0.0, res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    norm_a = std::max(norm_a,
                      std::abs(system.sub[i]) + std::abs(system.diag[i]) + std::abs(system.sup[i]));
    norm_x = std::max(norm_x, std::abs(x[i]));
    norm_b = std::max(norm_b, std::abs(system.rhs[i]));
    const double ax = system.sub[i] * x[(i + n - 1) % n] + system.diag[i] * x[i] +
                      system.sup[i] * x[(i + 1) % n];
    res = std::max(res, std::abs(ax - system.rhs[i]));
  }
  if (!std::isfinite(res) || res > 1e-8 * (norm_a * norm_x + norm_b)) {
    throw SingularMatrix("residual check failed: matrix is numerically singular");
  }
  return x;
}

}  // namespace curveflow
