#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "risradar/channel.hpp"
#include "risradar/optim.hpp"
#include "risradar/signal.hpp"

namespace testsupport {

using namespace risradar;

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

inline double rel_err(const CVector& a, const CVector& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

inline cdouble random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

inline CVector random_vector(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = random_complex(rng, scale);
  return v;
}

inline CVector random_phasors(Eigen::Index n, std::mt19937_64& rng) {
  return random_unit_modulus(n, rng);
}

inline CMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = random_complex(rng);
  return m;
}

inline RVector random_phases(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  RVector p(n);
  for (Eigen::Index i = 0; i < n; ++i) p[i] = u(rng);
  return p;
}

/// Synthetic side channel with arbitrary (non-physical) entries.
inline SideChannel random_side(Eigen::Index nr, Eigen::Index ns, std::mt19937_64& rng) {
  SideChannel s;
  s.gamma_r = random_complex(rng);
  s.gamma_s = random_complex(rng);
  s.v_r = random_phasors(nr, rng);
  s.v_s = random_phasors(ns, rng);
  s.p_r = random_phasors(nr, rng);
  s.p_s = random_phasors(ns, rng);
  s.coupling = random_matrix(nr, ns, rng);
  return s;
}

/// Random Hermitian PSD lifted matrix of the objective ||y + Q x||^2.
inline CMatrix random_lifted(Eigen::Index nr, Eigen::Index ns, std::mt19937_64& rng) {
  return lifted_matrix(random_vector(nr, rng), random_matrix(nr, ns, rng));
}

/// Random Hermitian PSD matrix with generic spectrum.
inline CMatrix random_psd(Eigen::Index n, Eigen::Index rank, std::mt19937_64& rng) {
  const CMatrix f = random_matrix(n, rank, rng);
  CMatrix b = f * f.adjoint();
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i, i) = b(i, i).real();
    for (Eigen::Index j = i + 1; j < n; ++j) b(j, i) = std::conj(b(i, j));
  }
  return b;
}

/// Exhaustive grid over phi in [0, 2pi)^N with `points` values per axis.
inline double grid_maximum(const std::function<double(const RVector&)>& f, Eigen::Index n,
                           int points) {
  RVector phi = RVector::Zero(n);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  double best = -1.0;
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) phi[i] = kTwoPi * idx[static_cast<std::size_t>(i)] / points;
    best = std::max(best, f(phi));
    Eigen::Index k = 0;
    while (k < n && ++idx[static_cast<std::size_t>(k)] == points) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return best;
}

/// Upper bound on how far the grid maximum can sit below the true maximum of
/// ||y + Q x||^2: each phase is within h/2 = pi/points of the optimum, so the
/// signature moves by at most sum_n |q_n| h/2.
inline double grid_resolution_bound(const CVector& y, const CMatrix& q, int points) {
  double reach = 0.0;
  for (Eigen::Index n = 0; n < q.cols(); ++n) reach += q.col(n).norm();
  const double step = kPi / points;
  const double radius = y.norm() + reach;
  return 2.0 * radius * reach * step + std::pow(reach * step, 2);
}

/// Direct elementwise evaluation of the noise-free receive-by-transmit matrix
/// built from the four echo terms, then column-major vectorization.
inline CVector matrix_model_oracle(const ChannelSet& ch, const PhaseConfig& ph) {
  const auto nt = ch.tx.radar_elements();
  const auto nq = ch.rx.radar_elements();
  CMatrix r = CMatrix::Zero(nq, nt);
  for (Eigen::Index q = 0; q < nq; ++q) {
    for (Eigen::Index j = 0; j < nt; ++j) {
      cdouble via_fwd = 0.0, via_bwd = 0.0;
      for (Eigen::Index n = 0; n < ch.tx.ris_elements(); ++n) {
        // forward matrix is N_s x N_t: entry (n, j) = coupling(j, n)
        via_fwd += ch.tx.v_s[n] * std::polar(1.0, ph.forward[n]) * ch.tx.coupling(j, n);
      }
      for (Eigen::Index n = 0; n < ch.rx.ris_elements(); ++n) {
        via_bwd += ch.rx.coupling(q, n) * std::polar(1.0, ph.backward[n]) * ch.rx.v_s[n];
      }
      const cdouble rr = ch.rx.gamma_r * ch.rx.v_r[q] * ch.tx.v_r[j] * ch.tx.gamma_r;
      const cdouble sr = ch.rx.gamma_r * ch.rx.v_r[q] * via_fwd * ch.tx.gamma_s;
      const cdouble rs = ch.rx.gamma_s * via_bwd * ch.tx.v_r[j] * ch.tx.gamma_r;
      const cdouble ss = ch.rx.gamma_s * via_bwd * via_fwd * ch.tx.gamma_s;
      r(q, j) = rr + sr + rs + ss;
    }
  }
  CVector out(nq * nt);
  for (Eigen::Index j = 0; j < nt; ++j)
    for (Eigen::Index q = 0; q < nq; ++q) out[j * nq + q] = r(q, j);
  return out;
}

/// pi/4 |z| 2F1(1/2, 1/2; 2; |z|^2): closed form of the arcsine transform.
inline double arcsine_transform_series(double m) {
  const double x = m * m;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 200000; ++k) {
    term *= (0.5 + k) * (0.5 + k) / ((2.0 + k) * (1.0 + k)) * x;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return kPi / 4.0 * m * sum;
}

}  // namespace testsupport
