#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "risradar/optim.hpp"

namespace risradar {

namespace {

int default_rank(Eigen::Index n) {
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
}

void normalize_rows(CMatrix& u) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double m = u.row(i).norm();
    if (m > 0.0) {
      u.row(i) /= m;
    } else {
      u.row(i).setZero();
      u(i, 0) = 1.0;
    }
  }
}

double trace_value(const CMatrix& lifted, const CMatrix& u) {
  // trace(B U U^H) = sum_i u_i^H (B U)_i
  return (u.adjoint() * (lifted * u)).trace().real();
}

struct AscentResult {
  CMatrix u;
  double value;
  int sweeps;
};

AscentResult block_ascent(const CMatrix& lifted, CMatrix u, int max_sweeps, double tolerance) {
  const auto n = lifted.rows();
  double previous = trace_value(lifted, u);
  int sweeps = 0;
  for (int k = 1; k <= max_sweeps; ++k) {
    CMatrix w = lifted * u;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::RowVectorXcd g = w.row(i) - lifted(i, i) * u.row(i);
      const double mag = g.norm();
      if (!(mag > 0.0)) continue;
      Eigen::RowVectorXcd next = g / mag;
      if ((g * next.adjoint())(0, 0).real() <= (g * u.row(i).adjoint())(0, 0).real()) continue;
      w += lifted.col(i) * (next - u.row(i));
      u.row(i) = next;
    }
    sweeps = k;
    const double value = trace_value(lifted, u);
    const double scale = std::max(std::abs(value), std::numeric_limits<double>::min());
    if ((value - previous) / scale < tolerance) {
      previous = std::max(previous, value);
      break;
    }
    previous = value;
  }
  return {std::move(u), previous, sweeps};
}

double dual_upper_bound(const CMatrix& lifted, const CMatrix& u) {
  const auto n = lifted.rows();
  const CMatrix w = lifted * u;
  RVector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = (w.row(i) * u.row(i).adjoint())(0, 0).real();
  CMatrix slack = lifted;
  for (Eigen::Index i = 0; i < n; ++i) slack(i, i) -= y[i];
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(slack, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  return y.sum() + static_cast<double>(n) * std::max(0.0, top);
}

}  // namespace

SdrRelaxation sdr_solve(const CMatrix& lifted, const SdrOptions& options) {
  const auto n = lifted.rows();
  if (lifted.cols() != n || n == 0) throw ModelError("relaxation needs a square matrix");
  const int rank = options.rank > 0 ? options.rank : default_rank(n);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<CMatrix> starts;
  for (const auto& z : options.warm_starts) {
    if (z.size() != n) throw ModelError("warm start dimension mismatch");
    CMatrix u = CMatrix::Zero(n, rank);
    u.col(0) = z;
    normalize_rows(u);
    starts.push_back(std::move(u));
  }
  for (int r = 0; r < std::max(options.restarts, 1); ++r) {
    CMatrix u(n, rank);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int j = 0; j < rank; ++j) u(i, j) = cdouble(normal(rng), normal(rng));
    }
    normalize_rows(u);
    starts.push_back(std::move(u));
  }

  SdrRelaxation best;
  best.value = -std::numeric_limits<double>::infinity();
  for (auto& u0 : starts) {
    AscentResult r = block_ascent(lifted, std::move(u0), options.max_sweeps, options.tolerance);
    best.sweeps += r.sweeps;
    if (r.value > best.value) {
      best.value = r.value;
      best.factor = std::move(r.u);
    }
  }
  // Tighten the winner well past the restart tolerance.
  AscentResult refined = block_ascent(lifted, best.factor, 4 * options.max_sweeps,
                                      std::min(options.tolerance, 1e-15));
  best.sweeps += refined.sweeps;
  if (refined.value >= best.value) {
    best.value = refined.value;
    best.factor = std::move(refined.u);
  }
  best.relaxed = best.factor * best.factor.adjoint();
  for (Eigen::Index i = 0; i < n; ++i) best.relaxed(i, i) = 1.0;
  best.dual_bound = dual_upper_bound(lifted, best.factor);
  return best;
}

namespace {

CMatrix covariance_factor(const CMatrix& relaxed) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(relaxed);
  const double top = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  const double floor = 1e-12 * top * static_cast<double>(relaxed.rows());
  RVector root = eig.eigenvalues().unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return eig.eigenvectors() * root.asDiagonal();
}

CVector draw_rounded(const CMatrix& factor, std::mt19937_64& rng,
                     std::normal_distribution<double>& normal) {
  CVector g(factor.cols());
  for (Eigen::Index j = 0; j < g.size(); ++j) g[j] = cdouble(normal(rng), normal(rng));
  CVector xi = factor * g;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double m = std::abs(xi[i]);
    xi[i] = m > 0.0 ? xi[i] / m : cdouble(1.0, 0.0);
  }
  return xi;
}

}  // namespace

std::vector<double> rounding_objectives(const CMatrix& relaxed, const CMatrix& lifted,
                                        int samples, std::uint64_t seed) {
  if (samples < 1) throw ModelError("rounding needs at least one sample");
  const CMatrix factor = covariance_factor(relaxed);
  std::mt19937_64 rng(seed);
  // Unit variance per complex entry: each real part has variance 1/2.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    out.push_back(quadratic_value(lifted, draw_rounded(factor, rng, normal)));
  }
  return out;
}

UnitModulusSolution gaussian_rounding(const CMatrix& relaxed, const CMatrix& lifted, int samples,
                                      std::uint64_t seed) {
  if (samples < 1) throw ModelError("rounding needs at least one sample");
  const CMatrix factor = covariance_factor(relaxed);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    CVector s = draw_rounded(factor, rng, normal);
    const double v = quadratic_value(lifted, s);
    if (v > best_value) {
      best_value = v;
      best = std::move(s);
    }
  }
  UnitModulusSolution sol = make_solution(lifted, best);
  sol.iterations = samples;
  return sol;
}

namespace {

double simpson_arcsine(double m, int panels) {
  // Symmetric about pi/2, so integrate [0, pi/2] only. The substitution
  // t = (pi/2) w^2 resolves the boundary layer at t = 0 when m is close to 1.
  const double h = 1.0 / panels;
  auto f = [m](double w) {
    const double t = 0.5 * kPi * w * w;
    const double c = std::cos(t);
    return kPi * w * c * std::asin(std::clamp(m * c, -1.0, 1.0));
  };
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

}  // namespace

double arcsine_transform(double magnitude, int panels) {
  if (panels < 2 || panels % 2) throw ModelError("Simpson rule needs an even panel count");
  const double m = std::clamp(magnitude, 0.0, 1.0);
  const double coarse = simpson_arcsine(m, panels);
  const double fine = simpson_arcsine(m, 2 * panels);
  if (std::abs(fine - coarse) > 1e-10) throw ModelError("quadrature did not converge");
  return fine + (fine - coarse) / 15.0;
}

CMatrix expected_rounding_matrix(const CMatrix& relaxed, int panels) {
  const auto n = relaxed.rows();
  CMatrix f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const cdouble zij = relaxed(i, j);
      const double m = std::abs(zij);
      const cdouble v = m > 0.0 ? (zij / m) * arcsine_transform(m, panels) : cdouble(0.0, 0.0);
      f(i, j) = v;
      f(j, i) = std::conj(v);
    }
  }
  return f;
}

double pi4_certificate(const CMatrix& relaxed, const CMatrix& lifted, int panels,
                       double tolerance) {
  const CMatrix f = expected_rounding_matrix(relaxed, panels);
  const double expected = (lifted * f).trace().real();
  const double relaxed_value = (lifted * relaxed).trace().real();
  if (expected < kPi / 4.0 * relaxed_value - tolerance) {
    throw ModelError("pi/4 rounding bound violated");
  }
  return expected;
}

SdrSolution sdr_design(const CMatrix& lifted, const SdrDesignOptions& options) {
  SdrSolution out;
  out.relaxation = sdr_solve(lifted, options.relaxation);
  out.rounded = gaussian_rounding(out.relaxation.relaxed, lifted, options.rounding_samples,
                                  options.relaxation.seed ^ 0x9e3779b97f4a7c15ULL);
  out.polished = altmax(lifted, out.rounded.z, options.polish);
  if (out.polished.objective < out.rounded.objective) {
    out.polished = out.rounded;
  }
  if (options.certify) out.certificate = pi4_certificate(out.relaxation.relaxed, lifted);
  return out;
}

}  // namespace risradar
