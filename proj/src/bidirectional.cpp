#include <cmath>

#include "risradar/optim.hpp"
#include "risradar/signal.hpp"

namespace risradar {

double scalar_subproblem(cdouble a, cdouble b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma == 0.0 && mb == 0.0) return 0.0;
  const double pa = std::arg(a), pb = std::arg(b);
  auto h = [&](double t) { return ma * std::cos(t + pa) + mb * std::cos(2.0 * t + pb); };
  auto dh = [&](double t) { return -ma * std::sin(t + pa) - 2.0 * mb * std::sin(2.0 * t + pb); };
  auto d2h = [&](double t) { return -ma * std::cos(t + pa) - 4.0 * mb * std::cos(2.0 * t + pb); };

  constexpr int kGrid = 256;
  const double step = kTwoPi / kGrid;
  double best_t = 0.0, best_h = h(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double t = i * step;
    const double v = h(t);
    if (v > best_h) {
      best_h = v;
      best_t = t;
    }
  }
  // Newton polish on the derivative, confined to the winning grid cell.
  double t = best_t;
  for (int it = 0; it < 50; ++it) {
    const double curv = d2h(t);
    if (!(curv < 0.0)) break;
    double next = t - dh(t) / curv;
    if (std::abs(next - best_t) > step) break;
    const bool settled = std::abs(next - t) < 1e-15;
    t = next;
    if (settled) break;
  }
  if (h(t) >= best_h) best_t = t;
  return wrap_phase(best_t);
}

namespace {

CMatrix reflected_columns(const SideChannel& side) {
  if (side.gamma_s == cdouble(0.0, 0.0)) {
    return CMatrix::Zero(side.radar_elements(), side.ris_elements());
  }
  return side.gamma_s * (side.coupling * side.v_s.asDiagonal());
}

}  // namespace

BidirectionalSolution bidirectional_altmax(const ChannelSet& ch, const RVector& init,
                                           const AltMaxOptions& options) {
  const auto ns = ch.tx.ris_elements();
  if (ch.rx.ris_elements() != ns) throw ModelError("bidirectional design needs equal RIS sizes");
  if (init.size() != ns) throw ModelError("initial phase vector length mismatch");
  if (!(options.tolerance > 0.0) || options.max_sweeps < 1) {
    throw ModelError("bidirectional design needs tolerance > 0 and at least one sweep");
  }
  const CMatrix qt = reflected_columns(ch.tx);
  const CMatrix qr = reflected_columns(ch.rx);
  const CVector yt = ch.tx.gamma_r * ch.tx.v_r;
  const CVector yr = ch.rx.gamma_r * ch.rx.v_r;

  BidirectionalSolution s;
  s.phases = canonical_phases(init);
  auto objective = [&](const RVector& p) {
    CVector x(ns);
    for (Eigen::Index n = 0; n < ns; ++n) x[n] = std::polar(1.0, p[n]);
    return (yt + qt * x).squaredNorm() * (yr + qr * x).squaredNorm();
  };

  double previous = 0.0;
  for (int k = 1; k <= options.max_sweeps; ++k) {
    CVector et = yt, er = yr;
    for (Eigen::Index n = 0; n < ns; ++n) {
      const cdouble x = std::polar(1.0, s.phases[n]);
      et += qt.col(n) * x;
      er += qr.col(n) * x;
    }
    for (Eigen::Index n = 0; n < ns; ++n) {
      const cdouble x_old = std::polar(1.0, s.phases[n]);
      const CVector tt = et - qt.col(n) * x_old;
      const CVector tr = er - qr.col(n) * x_old;
      const cdouble alpha = tt.dot(qt.col(n));
      const cdouble beta = tr.dot(qr.col(n));
      const double a = tt.squaredNorm() + qt.col(n).squaredNorm();
      const double b = tr.squaredNorm() + qr.col(n).squaredNorm();
      const cdouble coeff1 = 2.0 * a * beta + 2.0 * b * alpha;
      const cdouble coeff2 = 2.0 * alpha * beta;
      const double cand = scalar_subproblem(coeff1, coeff2);
      auto local = [&](double t) {
        return (coeff1 * std::polar(1.0, t) + coeff2 * std::polar(1.0, 2.0 * t)).real();
      };
      if (!(local(cand) > local(s.phases[n]))) continue;
      s.phases[n] = cand;
      const cdouble x_new = std::polar(1.0, cand);
      et = tt + qt.col(n) * x_new;
      er = tr + qr.col(n) * x_new;
    }
    const double f = objective(s.phases);
    s.history.push_back(f);
    s.iterations = k;
    if (!(f > 0.0) || (f - previous) / f < options.tolerance) break;
    previous = f;
  }
  s.objective = s.history.empty() ? objective(s.phases) : s.history.back();
  return s;
}

}  // namespace risradar
