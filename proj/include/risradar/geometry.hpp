#pragma once

#include <Eigen/Dense>

#include "risradar/types.hpp"

namespace risradar {

using Point3 = Eigen::Vector3d;

/// Azimuth in [-pi, pi), measured from +x towards +y; elevation in
/// [-pi/2, pi/2), positive towards +z.
struct Direction {
  double az = 0.0;
  double el = 0.0;
};

/// Right-handed orthonormal frame. Columns of `axes()` are the local x, y, z
/// unit vectors expressed in world coordinates.
class Frame {
 public:
  Frame();
  Frame(Point3 origin, const Eigen::Matrix3d& axes);

  /// Local x (boresight) rotated by yaw about world z, then pitched upward
  /// by `pitch`, then rolled about the boresight.
  static Frame from_euler(const Point3& origin, double yaw, double pitch = 0.0,
                          double roll = 0.0);

  const Point3& origin() const { return origin_; }
  const Eigen::Matrix3d& axes() const { return axes_; }

  Eigen::Vector3d to_local(const Point3& world) const;
  Point3 to_world(const Eigen::Vector3d& local) const;
  Frame translated_to(const Point3& new_origin) const;

 private:
  Point3 origin_;
  Eigen::Matrix3d axes_;
};

/// Direction of a local-frame vector. Throws ModelError("degenerate direction")
/// on the zero vector.
Direction direction_of_vector(const Eigen::Vector3d& local);

Direction direction_of(const Point3& p, const Frame& f);
double range_of(const Point3& p, const Frame& f);

/// Unit vector pointing towards `d`, expressed in the frame `d` refers to.
Eigen::Vector3d unit_vector(const Direction& d);

/// Angle between two vectors, accurate for nearly parallel inputs.
double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

}  // namespace risradar
