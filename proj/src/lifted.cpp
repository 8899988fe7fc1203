#include <cmath>

#include "risradar/optim.hpp"
#include "risradar/signal.hpp"

namespace risradar {

CMatrix lifted_matrix(const CVector& direct, const CMatrix& ris) {
  if (ris.rows() != direct.size()) throw ModelError("lifted form dimension mismatch");
  const auto n = ris.cols();
  CMatrix b(n + 1, n + 1);
  b.topLeftCorner(n, n) = ris.adjoint() * ris;
  b.topRightCorner(n, 1) = ris.adjoint() * direct;
  b.bottomLeftCorner(1, n) = direct.adjoint() * ris;
  b(n, n) = direct.squaredNorm();
  // Exact Hermitian symmetry regardless of the product rounding.
  for (Eigen::Index i = 0; i <= n; ++i) {
    b(i, i) = b(i, i).real();
    for (Eigen::Index j = i + 1; j <= n; ++j) b(j, i) = std::conj(b(i, j));
  }
  return b;
}

LiftedQuadraticForm lifted_form(const CVector& direct, const CMatrix& ris) {
  return {direct, ris, lifted_matrix(direct, ris)};
}

LiftedQuadraticForm build_lifted_form(const SideChannel& side) {
  CMatrix q = CMatrix::Zero(side.radar_elements(), side.ris_elements());
  if (side.ris_elements() > 0 && side.gamma_s != cdouble(0.0, 0.0)) {
    q = side.gamma_s * (side.coupling * side.v_s.asDiagonal());
  }
  return lifted_form(side.gamma_r * side.v_r, q);
}

double LiftedQuadraticForm::objective(const RVector& phases) const {
  if (phases.size() != ris.cols()) throw ModelError("phase vector length mismatch");
  CVector x(phases.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) x[n] = std::polar(1.0, phases[n]);
  return (direct + ris * x).squaredNorm();
}

double quadratic_value(const CMatrix& lifted, const CVector& z) {
  return z.dot(lifted * z).real();
}

RVector phases_from_lifted(const CVector& z) {
  const auto n = z.size() - 1;
  RVector phases(n);
  const double ref = std::arg(z[n]);
  for (Eigen::Index i = 0; i < n; ++i) phases[i] = wrap_phase(std::arg(z[i]) - ref);
  return phases;
}

CVector lifted_from_phases(const RVector& phases) {
  CVector z(phases.size() + 1);
  for (Eigen::Index i = 0; i < phases.size(); ++i) z[i] = std::polar(1.0, phases[i]);
  z[phases.size()] = 1.0;
  return z;
}

UnitModulusSolution make_solution(const CMatrix& lifted, const CVector& z) {
  UnitModulusSolution s;
  s.z = z;
  s.phases = phases_from_lifted(z);
  s.objective = quadratic_value(lifted, z);
  return s;
}

CVector random_unit_modulus(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  CVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = std::polar(1.0, phase(rng));
  return z;
}

double rank1_optimum(const CVector& direct, const CVector& q_r, const CVector& q_s) {
  const double sum_abs = q_s.cwiseAbs().sum();
  return direct.squaredNorm() + q_r.squaredNorm() * sum_abs * sum_abs +
         2.0 * std::abs(direct.dot(q_r)) * sum_abs;
}

UnitModulusSolution solve_rank1(const CVector& direct, const CVector& q_r, const CVector& q_s) {
  if (q_r.size() != direct.size()) throw ModelError("rank-one factor dimension mismatch");
  const double cross = std::arg(direct.dot(q_r));
  UnitModulusSolution s;
  s.phases.resize(q_s.size());
  for (Eigen::Index n = 0; n < q_s.size(); ++n) {
    s.phases[n] = wrap_phase(-std::arg(q_s[n]) - cross);
  }
  s.z = lifted_from_phases(s.phases);
  CVector x = s.z.head(q_s.size());
  s.objective = (direct + q_r * q_s.transpose() * x).squaredNorm();
  return s;
}

}  // namespace risradar
