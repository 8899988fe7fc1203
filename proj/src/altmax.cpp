#include <cmath>

#include "risradar/optim.hpp"

namespace risradar {

UnitModulusSolution altmax(const CMatrix& lifted, const CVector& init,
                           const AltMaxOptions& options) {
  const auto n = lifted.rows();
  if (lifted.cols() != n || init.size() != n) throw ModelError("altmax dimension mismatch");
  if (!(options.tolerance > 0.0) || options.max_sweeps < 1) {
    throw ModelError("altmax needs tolerance > 0 and at least one sweep");
  }
  CVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = std::abs(init[i]);
    z[i] = m > 0.0 ? init[i] / m : cdouble(1.0, 0.0);
  }

  UnitModulusSolution s;
  double previous = quadratic_value(lifted, z);
  for (int k = 1; k <= options.max_sweeps; ++k) {
    const CVector before = z;
    CVector bz = lifted * z;
    for (Eigen::Index i = 0; i < n; ++i) {
      const cdouble g = bz[i] - lifted(i, i) * z[i];
      const double mag = std::abs(g);
      const cdouble next = mag > 0.0 ? g / mag : cdouble(1.0, 0.0);
      // Only move when the local term strictly improves.
      if (mag > 0.0 && (std::conj(next) * g).real() <= (std::conj(z[i]) * g).real()) continue;
      const cdouble delta = next - z[i];
      if (delta == cdouble(0.0, 0.0)) continue;
      bz += lifted.col(i) * delta;
      z[i] = next;
    }
    double f = quadratic_value(lifted, z);
    s.iterations = k;
    if (f < previous) {
      // converged to working precision; the re-evaluated sum came out lower
      z = before;
      f = previous;
    }
    s.history.push_back(f);
    if (!(f > 0.0) || (f - previous) / f < options.tolerance) break;
    previous = f;
  }
  s.z = z;
  s.phases = phases_from_lifted(z);
  s.objective = s.history.back();
  return s;
}

}  // namespace risradar
