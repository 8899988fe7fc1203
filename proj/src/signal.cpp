#include "risradar/signal.hpp"

#include <algorithm>
#include <limits>

namespace risradar {

RVector canonical_phases(const RVector& phases) {
  RVector out(phases.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    if (!std::isfinite(phases[i])) throw ModelError("phase shifts must be finite");
    out[i] = wrap_phase(phases[i]);
  }
  return out;
}

PhaseConfig PhaseConfig::zeros(const ChannelSet& ch) {
  return {RVector::Zero(ch.tx.ris_elements()), RVector::Zero(ch.rx.ris_elements())};
}

PhaseConfig PhaseConfig::canonical() const {
  return {canonical_phases(forward), canonical_phases(backward)};
}

namespace {

void check_dimensions(const SideChannel& side, const RVector& phases) {
  if (phases.size() != side.ris_elements()) {
    throw ModelError("phase vector length does not match the RIS size");
  }
  if (side.coupling.rows() != side.radar_elements() ||
      side.coupling.cols() != side.ris_elements()) {
    throw ModelError("coupling matrix dimensions are inconsistent");
  }
}

}  // namespace

CVector indirect_signature(const SideChannel& side, const RVector& phases) {
  check_dimensions(side, phases);
  if (side.ris_elements() == 0 || side.gamma_s == cdouble(0.0, 0.0)) {
    return CVector::Zero(side.radar_elements());
  }
  CVector reflected(phases.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) {
    reflected[n] = std::polar(1.0, phases[n]) * side.v_s[n];
  }
  return side.gamma_s * (side.coupling * reflected);
}

CVector side_signature(const SideChannel& side, const RVector& phases) {
  return side.gamma_r * side.v_r + indirect_signature(side, phases);
}

CVector transmit_signature(const ChannelSet& ch, const RVector& forward_phases) {
  return side_signature(ch.tx, forward_phases);
}

CVector receive_signature(const ChannelSet& ch, const RVector& backward_phases) {
  return side_signature(ch.rx, backward_phases);
}

CVector kron(const CVector& transmit, const CVector& receive) {
  const auto nr = receive.size();
  CVector out(transmit.size() * nr);
  for (Eigen::Index j = 0; j < transmit.size(); ++j) {
    out.segment(j * nr, nr) = transmit[j] * receive;
  }
  return out;
}

SpatialSignature spatial_signature(const ChannelSet& ch, const PhaseConfig& phases) {
  SpatialSignature s;
  s.transmit = transmit_signature(ch, phases.forward);
  s.receive = receive_signature(ch, phases.backward);
  s.full = kron(s.transmit, s.receive);
  return s;
}

EchoBreakdown echo_breakdown(const ChannelSet& ch, const PhaseConfig& phases) {
  const CVector tx_direct = ch.tx.gamma_r * ch.tx.v_r;
  const CVector rx_direct = ch.rx.gamma_r * ch.rx.v_r;
  const CVector tx_ris = indirect_signature(ch.tx, phases.forward);
  const CVector rx_ris = indirect_signature(ch.rx, phases.backward);
  return {kron(tx_direct, rx_direct), kron(tx_ris, rx_direct), kron(tx_direct, rx_ris),
          kron(tx_ris, rx_ris)};
}

double snr_from_energy(double signature_energy, double target_mean_square, double noise_power) {
  if (!(noise_power > 0.0)) throw ModelError("noise power must be positive");
  return target_mean_square / noise_power * signature_energy;
}

double snr(const ChannelSet& ch, const PhaseConfig& phases, double target_mean_square,
           double noise_power) {
  const double energy = transmit_signature(ch, phases.forward).squaredNorm() *
                        receive_signature(ch, phases.backward).squaredNorm();
  return snr_from_energy(energy, target_mean_square, noise_power);
}

double DelaySpread::max_bandwidth() const {
  if (unbounded()) return std::numeric_limits<double>::infinity();
  return 1.0 / (10.0 * spread());
}

namespace {

struct LegRange {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool any = false;

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    any = true;
  }
};

void add_direct(LegRange& leg, const PlacedArray& radar, const Point3& target) {
  for (const auto& p : radar.element_positions()) leg.add((p - target).norm());
}

void add_via_ris(LegRange& leg, const PlacedArray& radar, const PlacedArray& ris,
                 const Point3& target) {
  const auto radar_pts = radar.element_positions();
  for (const auto& s : ris.element_positions()) {
    const double to_target = (s - target).norm();
    for (const auto& p : radar_pts) leg.add((p - s).norm() + to_target);
  }
}

}  // namespace

DelaySpread delay_spread(const Deployment& dep, const Point3& target,
                         const GammaChannels& gammas) {
  const cdouble zero(0.0, 0.0);
  LegRange fwd, bwd;
  if (gammas.tx_direct != zero) add_direct(fwd, dep.transmitter, target);
  if (gammas.tx_ris != zero && dep.forward_ris) {
    add_via_ris(fwd, dep.transmitter, *dep.forward_ris, target);
  }
  if (gammas.rx_direct != zero) add_direct(bwd, dep.receiver, target);
  if (gammas.rx_ris != zero && dep.backward_ris) {
    add_via_ris(bwd, dep.receiver, *dep.backward_ris, target);
  }
  if (!fwd.any || !bwd.any) throw ModelError("no propagation path reaches the receiver");
  return {(fwd.lo + bwd.lo) / kSpeedOfLight, (fwd.hi + bwd.hi) / kSpeedOfLight};
}

}  // namespace risradar
