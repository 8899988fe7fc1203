#include "risradar/arrays.hpp"

#include <algorithm>
#include <cmath>

namespace risradar {

double cos_power_exponent(double beamwidth) {
  if (!(beamwidth > 0.0) || !(beamwidth < kPi)) {
    throw ModelError("beamwidth must lie in (0, pi)");
  }
  return std::log(0.5) / std::log(std::cos(beamwidth / 2.0));
}

ElementPattern ElementPattern::from_beamwidths(double az_beamwidth, double el_beamwidth,
                                               double peak_gain) {
  if (!(peak_gain > 0.0)) throw ModelError("element peak gain must be positive");
  return {peak_gain, cos_power_exponent(az_beamwidth), cos_power_exponent(el_beamwidth)};
}

double element_gain(const ElementPattern& pattern, const Direction& dir) {
  if (!(std::abs(dir.az) < kPi / 2) || !(std::abs(dir.el) < kPi / 2)) return 0.0;
  const double ca = std::cos(dir.az);
  const double ce = std::cos(dir.el);
  return pattern.peak_gain * std::pow(ca, pattern.q_az) * std::pow(ce, pattern.q_el);
}

void PlanarArraySpec::validate() const {
  if (positions.empty()) throw ModelError("array must contain at least one element");
  if (!(element_width > 0.0) || !(element_height > 0.0)) {
    throw ModelError("array element dimensions must be positive");
  }
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const auto& p : positions) centroid += p;
  centroid /= static_cast<double>(positions.size());
  const double scale = std::max(element_width, element_height);
  if (centroid.norm() > 1e-9 * scale * static_cast<double>(positions.size())) {
    throw ModelError("array centroid must be at the local origin");
  }
  const double tol = 1e-9 * scale;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const Eigen::Vector2d d = (positions[i] - positions[j]).cwiseAbs();
      if (d.x() < element_width - tol && d.y() < element_height - tol) {
        throw ModelError("array elements overlap");
      }
    }
  }
}

PlanarArraySpec make_ula(int count, double spacing, double element_width,
                         double element_height, const ElementPattern& pattern) {
  if (count < 1) throw ModelError("ULA needs at least one element");
  if (!(spacing > 0.0)) throw ModelError("ULA spacing must be positive");
  PlanarArraySpec spec;
  spec.element_width = element_width;
  spec.element_height = element_height;
  spec.pattern = pattern;
  spec.positions.reserve(static_cast<std::size_t>(count));
  const double mid = 0.5 * (count - 1);
  for (int i = 0; i < count; ++i) spec.positions.emplace_back((i - mid) * spacing, 0.0);
  return spec;
}

PlanarArraySpec make_ris_grid(int count, double element_side) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
  if (count < 1 || side * side != count) {
    throw ModelError("RIS element count must be a perfect square");
  }
  if (!(element_side > 0.0)) throw ModelError("RIS element side must be positive");
  PlanarArraySpec spec;
  spec.element_width = element_side;
  spec.element_height = element_side;
  spec.positions.reserve(static_cast<std::size_t>(count));
  const double mid = 0.5 * (side - 1);
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      spec.positions.emplace_back((col - mid) * element_side, (row - mid) * element_side);
    }
  }
  return spec;
}

double array_max_size(const PlanarArraySpec& spec) {
  double ymin = 0, ymax = 0, zmin = 0, zmax = 0;
  bool first = true;
  for (const auto& p : spec.positions) {
    const double y0 = p.x() - spec.element_width / 2, y1 = p.x() + spec.element_width / 2;
    const double z0 = p.y() - spec.element_height / 2, z1 = p.y() + spec.element_height / 2;
    if (first) {
      ymin = y0, ymax = y1, zmin = z0, zmax = z1;
      first = false;
    } else {
      ymin = std::min(ymin, y0), ymax = std::max(ymax, y1);
      zmin = std::min(zmin, z0), zmax = std::max(zmax, z1);
    }
  }
  return std::hypot(ymax - ymin, zmax - zmin);
}

double element_max_size(const PlanarArraySpec& spec) {
  return std::hypot(spec.element_width, spec.element_height);
}

int central_element(const PlanarArraySpec& spec) {
  const double tol = 1e-12 * std::max(spec.element_width, spec.element_height);
  for (std::size_t i = 0; i < spec.positions.size(); ++i) {
    if (spec.positions[i].norm() <= tol) return static_cast<int>(i);
  }
  return -1;
}

CVector steering_vector(const PlanarArraySpec& spec, const Direction& dir,
                        double wavelength) {
  if (!(wavelength > 0.0)) throw ModelError("wavelength must be positive");
  const Eigen::Vector3d u = unit_vector(dir);
  const double k = kTwoPi / wavelength;
  CVector v(static_cast<Eigen::Index>(spec.size()));
  for (std::size_t n = 0; n < spec.size(); ++n) {
    const double proj = spec.positions[n].x() * u.y() + spec.positions[n].y() * u.z();
    v(static_cast<Eigen::Index>(n)) = std::polar(1.0, k * proj);
  }
  return v;
}

Point3 PlacedArray::element_position(std::size_t i) const {
  const auto& p = spec.positions.at(i);
  return frame.to_world(Eigen::Vector3d(0.0, p.x(), p.y()));
}

std::vector<Point3> PlacedArray::element_positions() const {
  std::vector<Point3> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(element_position(i));
  return out;
}

}  // namespace risradar
