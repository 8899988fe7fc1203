#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "risradar/geometry.hpp"
#include "risradar/types.hpp"

namespace risradar {

/// Cos-power element pattern: G0 cos^q_az(az) cos^q_el(el) on the front
/// hemisphere, zero behind.
struct ElementPattern {
  double peak_gain = 1.0;
  double q_az = 0.0;
  double q_el = 0.0;

  /// Fits exponents so the gain drops to G0/2 at half of each 3-dB beamwidth.
  static ElementPattern from_beamwidths(double az_beamwidth, double el_beamwidth,
                                        double peak_gain = 1.0);
};

/// Exponent q with cos^q(beamwidth/2) = 1/2.
double cos_power_exponent(double beamwidth);

double element_gain(const ElementPattern& pattern, const Direction& dir);

/// Planar array in the local (y, z) plane. Element centres are stored relative
/// to the array centroid, which sits at the local origin.
struct PlanarArraySpec {
  std::vector<Eigen::Vector2d> positions;  // (y, z) in metres
  double element_width = 0.0;              // along local y
  double element_height = 0.0;             // along local z
  ElementPattern pattern;

  std::size_t size() const { return positions.size(); }
  double element_area() const { return element_width * element_height; }

  /// Throws ModelError when empty, off-centre, or elements overlap.
  void validate() const;
};

PlanarArraySpec make_ula(int count, double spacing, double element_width,
                         double element_height, const ElementPattern& pattern);

/// sqrt(N) x sqrt(N) grid of adjacent square elements. Element n sits in row
/// n / side (local z) and column n % side (local y).
PlanarArraySpec make_ris_grid(int count, double element_side);

/// Diagonal of the bounding rectangle of all element extents.
double array_max_size(const PlanarArraySpec& spec);
/// Diagonal of a single element.
double element_max_size(const PlanarArraySpec& spec);

/// Index of the element at the centroid, or -1 when no element sits there.
int central_element(const PlanarArraySpec& spec);

CVector steering_vector(const PlanarArraySpec& spec, const Direction& dir,
                        double wavelength);

/// An array spec together with its pose in the world.
struct PlacedArray {
  PlanarArraySpec spec;
  Frame frame;

  std::size_t size() const { return spec.size(); }
  Point3 element_position(std::size_t i) const;
  std::vector<Point3> element_positions() const;
};

}  // namespace risradar
