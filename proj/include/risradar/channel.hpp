#pragma once

#include <string>
#include <utility>

#include "risradar/layout.hpp"
#include "risradar/types.hpp"

namespace risradar {

/// Additional linear attenuation per path; every factor must be >= 1.
struct LossBudget {
  double tx_direct = 1.0;
  double tx_ris = 1.0;
  double rx_direct = 1.0;
  double rx_ris = 1.0;

  void validate() const;
};

struct RadiatedPower {
  double tx_power = 1.0;           // total radiated power (W)
  double noise_power = 1.0;        // sigma_w^2
  double target_mean_square = 1.0; // sigma_alpha^2 = E|alpha|^2

  void validate() const;
};

/// Which paths physically exist. Direct paths model radar-target line of
/// sight; RIS flags are the presence indicators of each surface.
struct PathIndicators {
  bool tx_direct = true;
  bool rx_direct = true;
  bool forward_ris = true;
  bool backward_ris = true;
};

/// Effective receive aperture of a RIS element; zero when illuminated from behind.
double ris_aperture_factor(double element_area, const Direction& incoming);
/// Re-radiation gain of a RIS element; zero towards the back half-space.
double ris_gain_factor(double element_area, double wavelength, const Direction& outgoing);
/// Product of the two factors above.
double bistatic_rcs(double element_area, double wavelength, const Direction& incoming,
                    const Direction& outgoing);

struct GammaChannels {
  cdouble tx_direct;   // gamma-bar_r
  cdouble tx_ris;      // gamma-bar_s
  cdouble rx_direct;   // gamma-ddot_r
  cdouble rx_ris;      // gamma-ddot_s
};

GammaChannels gamma_channels(const Deployment& dep, const GeometrySummary& geo,
                             const RadiatedPower& power, const LossBudget& losses,
                             const PathIndicators& paths = {});

struct CouplingMatrices {
  CMatrix forward;   // N_s x N_r transmitter -> forward RIS
  CMatrix backward;  // N_r x N_s backward RIS -> receiver
};

CouplingMatrices coupling_matrices(const Deployment& dep, const GeometrySummary& geo,
                                   const GammaChannels& gammas);

/// Everything one side (transmit or receive) contributes to the spatial
/// signature   gamma_r v_r + gamma_s C X(phi) v_s,   where C is N_r x N_s
/// (the transpose of the forward matrix, or the backward matrix as is).
struct SideChannel {
  cdouble gamma_r{0.0, 0.0};
  cdouble gamma_s{0.0, 0.0};
  CVector v_r;       // radar steering towards the target
  CVector v_s;       // RIS steering towards the target
  CVector p_r;       // radar steering towards the RIS centre
  CVector p_s;       // RIS steering towards the radar centre
  CMatrix coupling;  // N_r x N_s

  Eigen::Index radar_elements() const { return v_r.size(); }
  Eigen::Index ris_elements() const { return v_s.size(); }
  bool has_ris() const { return v_s.size() > 0; }
  /// Plane-wave coupling p_r p_s^T, the far-field limit of `coupling`.
  CMatrix plane_wave_coupling() const;
  SideChannel without_ris() const;
};

struct ChannelSet {
  SideChannel tx;
  SideChannel rx;

  /// Forward matrix in its natural N_s x N_r layout.
  CMatrix forward_matrix() const { return tx.coupling.transpose(); }
  const CMatrix& backward_matrix() const { return rx.coupling; }
  ChannelSet with_paths(bool forward_ris, bool backward_ris) const;
};

ChannelSet build_channels(const Deployment& dep, const GeometrySummary& geo,
                          const RadiatedPower& power, const LossBudget& losses,
                          const PathIndicators& paths = {});

enum class Contributor { Radar, Ris, RadarAndRis };

struct ConfigurationLabel {
  bool los = true;
  Contributor illuminated_by = Contributor::Radar;
  Contributor observed_by = Contributor::Radar;

  std::string to_string() const;
};

/// Table of system configurations. Throws ModelError("target unreachable")
/// when nothing illuminates or nothing observes the target.
ConfigurationLabel classify_configuration(cdouble tx_direct, cdouble rx_direct,
                                          cdouble tx_ris, cdouble rx_ris);

std::string to_string(Contributor c);

}  // namespace risradar
