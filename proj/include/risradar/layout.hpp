#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risradar/arrays.hpp"
#include "risradar/geometry.hpp"

namespace risradar {

/// World-frame description of every array taking part in the link.
struct Deployment {
  double wavelength = 0.0;
  PlacedArray transmitter;
  PlacedArray receiver;
  std::optional<PlacedArray> forward_ris;
  std::optional<PlacedArray> backward_ris;
  double target_size_tx = 0.0;  // effective target size seen from the transmitter (m)
  double target_size_rx = 0.0;  // ... and from the receiver (m)
};

/// Per-element distances and angles between a radar array and a RIS.
/// All matrices are RIS-major: entry (n, j) couples RIS element n and radar
/// element j.
struct ElementGrid {
  RMatrix distance;
  RMatrix ris_az_at_radar;  // RIS element n seen from radar element j (radar axes)
  RMatrix ris_el_at_radar;
  RMatrix radar_az_at_ris;  // radar element j seen from RIS element n (RIS axes)
  RMatrix radar_el_at_ris;

  Eigen::Index ris_count() const { return distance.rows(); }
  Eigen::Index radar_count() const { return distance.cols(); }
  ElementGrid transposed() const;
};

/// Throws ModelError when any radar element coincides with a RIS element.
ElementGrid element_geometry(const PlacedArray& radar, const PlacedArray& ris);

struct RisLink {
  double center_distance = 0.0;   // delta
  Direction ris_from_radar;       // theta_s
  Direction radar_from_ris;       // omega_r
  double target_range = 0.0;      // d
  Direction target_from_ris;      // omega_t
  /// Forward side: (N_s x N_r). Backward side: transposed to (N_r x N_s).
  ElementGrid elements;
};

struct SideGeometry {
  double target_range = 0.0;  // rho
  Direction target_direction; // theta_t
  std::optional<RisLink> ris;
};

struct GeometrySummary {
  SideGeometry tx;
  SideGeometry rx;
};

GeometrySummary summarize_geometry(const Deployment& deployment, const Point3& target);

struct FarFieldCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = false;
  bool pass = false;
};

struct AspectAngleCheck {
  std::string name;
  double resolution = 0.0;  // lambda / D_t
  double max_angle = 0.0;   // max over element pairs of the angle at the target
  double factor = 10.0;
  bool applicable = false;
  bool pass = false;
};

struct FarFieldReport {
  std::vector<FarFieldCheck> checks;  // target-ris (x2), target-radar (x2), element (x2)
  std::vector<AspectAngleCheck> aspect;
  double min_separation_tx = 0.0;     // element-level threshold, transmit side
  double min_separation_rx = 0.0;
  double radar_ris_far_field_tx = 0.0;  // 2 max(D_r, D_s)^2 / lambda
  double radar_ris_far_field_rx = 0.0;

  bool all_pass() const;
  const FarFieldCheck& check(const std::string& name) const;
};

/// Max of {2a^2/lambda, 2b^2/lambda, 5a, 5b, 1.6 lambda}.
double far_field_bound(double size_a, double size_b, double wavelength);

FarFieldReport far_field_checks(const Deployment& deployment, const Point3& target,
                                double aspect_factor = 10.0);

}  // namespace risradar
