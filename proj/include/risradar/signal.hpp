#pragma once

#include "risradar/channel.hpp"
#include "risradar/layout.hpp"
#include "risradar/types.hpp"

namespace risradar {

/// Phase shifts of both surfaces, kept in [0, 2pi).
struct PhaseConfig {
  RVector forward;
  RVector backward;

  static PhaseConfig zeros(const ChannelSet& ch);
  PhaseConfig canonical() const;
};

RVector canonical_phases(const RVector& phases);

struct SpatialSignature {
  CVector transmit;  // N_r(tx)
  CVector receive;   // N_r(rx)
  CVector full;      // transmit (x) receive
};

struct EchoBreakdown {
  CVector direct_direct;  // e_rr
  CVector ris_direct;     // e_sr: illuminated via the forward RIS, observed directly
  CVector direct_ris;     // e_rs
  CVector ris_ris;        // e_ss

  CVector total() const { return direct_direct + ris_direct + direct_ris + ris_ris; }
};

/// gamma_r v_r + gamma_s C diag(e^{i phi}) v_s for one side.
CVector side_signature(const SideChannel& side, const RVector& phases);
/// Only the RIS part gamma_s C diag(e^{i phi}) v_s.
CVector indirect_signature(const SideChannel& side, const RVector& phases);

CVector transmit_signature(const ChannelSet& ch, const RVector& forward_phases);
CVector receive_signature(const ChannelSet& ch, const RVector& backward_phases);

/// Column-major vec of the receive-by-transmit matrix, i.e. t (x) r.
CVector kron(const CVector& transmit, const CVector& receive);

SpatialSignature spatial_signature(const ChannelSet& ch, const PhaseConfig& phases);
EchoBreakdown echo_breakdown(const ChannelSet& ch, const PhaseConfig& phases);

/// (sigma_alpha^2 / sigma_w^2) ||e||^2.
double snr(const ChannelSet& ch, const PhaseConfig& phases, double target_mean_square,
           double noise_power);
double snr_from_energy(double signature_energy, double target_mean_square, double noise_power);

struct DelaySpread {
  double tau_min = 0.0;
  double tau_max = 0.0;

  double spread() const { return tau_max - tau_min; }
  bool unbounded() const { return !(spread() > 0.0); }
  /// 1 / (10 (tau_max - tau_min)); +inf when all paths share one delay.
  double max_bandwidth() const;
  /// (tau_max - tau_min) / 10 as printed in the source text (seconds).
  double literal_value() const { return spread() / 10.0; }
};

/// Delay extremes over every element-level path whose echo is present
/// (non-zero gammas). Throws ModelError when no path exists.
DelaySpread delay_spread(const Deployment& dep, const Point3& target,
                         const GammaChannels& gammas);

}  // namespace risradar
