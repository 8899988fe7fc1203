#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "risradar/channel.hpp"
#include "risradar/types.hpp"

namespace risradar {

/// max_x ||y + Q x||^2 over unit-modulus x, lifted to z^H B z with z = (x, 1).
struct LiftedQuadraticForm {
  CVector direct;  // y = gamma_r v_r
  CMatrix ris;     // Q = gamma_s C diag(v_s), N_r x N_s
  CMatrix lifted;  // B, (N_s + 1) x (N_s + 1)

  Eigen::Index ris_elements() const { return ris.cols(); }
  /// ||y + Q x(phi)||^2 evaluated directly.
  double objective(const RVector& phases) const;
};

CMatrix lifted_matrix(const CVector& direct, const CMatrix& ris);
LiftedQuadraticForm lifted_form(const CVector& direct, const CMatrix& ris);
LiftedQuadraticForm build_lifted_form(const SideChannel& side);

/// Re(z^H B z).
double quadratic_value(const CMatrix& lifted, const CVector& z);

struct UnitModulusSolution {
  CVector z;
  RVector phases;
  double objective = 0.0;
  int iterations = 0;
  std::vector<double> history;  // objective after each sweep
};

/// Phases relative to the last entry of z, wrapped into [0, 2pi).
RVector phases_from_lifted(const CVector& z);
CVector lifted_from_phases(const RVector& phases);
UnitModulusSolution make_solution(const CMatrix& lifted, const CVector& z);

CVector random_unit_modulus(Eigen::Index n, std::mt19937_64& rng);

/// Closed form for Q = q_r q_s^T.
UnitModulusSolution solve_rank1(const CVector& direct, const CVector& q_r, const CVector& q_s);
double rank1_optimum(const CVector& direct, const CVector& q_r, const CVector& q_s);

struct AltMaxOptions {
  double tolerance = 1e-5;
  int max_sweeps = 200;
};

/// Coordinate ascent on z^H B z over unit-modulus z.
UnitModulusSolution altmax(const CMatrix& lifted, const CVector& init,
                           const AltMaxOptions& options = {});

struct SdrOptions {
  int rank = 0;  // 0 selects ceil(sqrt(n)) + 1
  int restarts = 5;
  int max_sweeps = 500;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::vector<CVector> warm_starts;  // feasible z used as extra rank-one starts
};

struct SdrRelaxation {
  CMatrix relaxed;      // Z = U U^H, unit diagonal
  CMatrix factor;       // U, n x r with unit-norm rows
  double value = 0.0;   // trace(B Z)
  double dual_bound = 0.0;  // certified upper bound on the relaxation optimum
  int sweeps = 0;
};

SdrRelaxation sdr_solve(const CMatrix& lifted, const SdrOptions& options = {});

/// Best of `samples` normalized draws from CN(0, Z).
UnitModulusSolution gaussian_rounding(const CMatrix& relaxed, const CMatrix& lifted, int samples,
                                      std::uint64_t seed);
/// Objective of each individual rounded draw.
std::vector<double> rounding_objectives(const CMatrix& relaxed, const CMatrix& lifted,
                                        int samples, std::uint64_t seed);

/// (1/2) int_0^pi cos(t) asin(m cos(t)) dt by composite Simpson on a graded
/// grid, panel doubling plus one Richardson step.
double arcsine_transform(double magnitude, int panels = 512);
/// Entrywise transform F(Z) whose trace against B is the expected rounded objective.
CMatrix expected_rounding_matrix(const CMatrix& relaxed, int panels = 512);
/// trace(B F(Z)); throws ModelError when the quadrature fails to settle
/// against panel doubling or the pi/4 bound is violated beyond `tolerance`.
double pi4_certificate(const CMatrix& relaxed, const CMatrix& lifted, int panels = 512,
                       double tolerance = 1e-8);

struct SdrSolution {
  SdrRelaxation relaxation;
  UnitModulusSolution rounded;   // best rounded draw
  UnitModulusSolution polished;  // rounded draw refined by coordinate ascent
  double certificate = 0.0;
};

struct SdrDesignOptions {
  SdrOptions relaxation;
  int rounding_samples = 64;
  AltMaxOptions polish;
  bool certify = true;
};

SdrSolution sdr_design(const CMatrix& lifted, const SdrDesignOptions& options = {});

/// Far-field closed-form phases using the plane-wave coupling p_r p_s^T.
UnitModulusSolution farfield_phases(const SideChannel& side);
/// N_r |g_r|^2 + N_r N_s^2 |g_s|^2 + 2 N_s |g_r^* g_s v_r^H p_r|.
double farfield_optimum(const SideChannel& side);

struct SideFarFieldGain {
  double gain = 1.0;        // approximate gain using rho ~ d
  double exact_gain = 1.0;  // same expression with the actual gammas
  double ris_term = 0.0;    // I_s G(theta_s) L_r N_s^2 zeta / (G(theta_t) L_s 4 pi delta^2)
  double bound_value = 0.0; // (N_s A_s / (delta lambda))^2
  bool within_bound = true; // bound_value <= 1/4
};

struct FarFieldGains {
  SideFarFieldGain tx;
  SideFarFieldGain rx;
};

/// Throws ModelError when either direct path is missing.
FarFieldGains farfield_gains(const Deployment& dep, const GeometrySummary& geo,
                             const LossBudget& losses, const ChannelSet& ch);

/// argmax_phi Re{a e^{i phi} + b e^{2 i phi}} in [0, 2pi).
double scalar_subproblem(cdouble a, cdouble b);

struct BidirectionalSolution {
  RVector phases;
  double objective = 0.0;  // ||e(phi, phi)||^2
  int iterations = 0;
  std::vector<double> history;
};

/// Equal-phase design for one surface serving both directions.
BidirectionalSolution bidirectional_altmax(const ChannelSet& ch, const RVector& init,
                                           const AltMaxOptions& options = {});

}  // namespace risradar
