#include "risradar/geometry.hpp"

#include <cmath>
#include <limits>

namespace risradar {

double wrap_phase(double phase) {
  double w = std::fmod(phase, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Frame::Frame() : origin_(Point3::Zero()), axes_(Eigen::Matrix3d::Identity()) {}

Frame::Frame(Point3 origin, const Eigen::Matrix3d& axes)
    : origin_(std::move(origin)), axes_(axes) {
  if (!origin_.allFinite() || !axes_.allFinite()) {
    throw ModelError("frame: non-finite origin or axes");
  }
  const Eigen::Matrix3d gram = axes_.transpose() * axes_;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ModelError("frame: axes are not orthonormal");
  }
  if (std::abs(axes_.determinant() - 1.0) > 1e-12) {
    throw ModelError("frame: axes are not right-handed");
  }
}

Frame Frame::from_euler(const Point3& origin, double yaw, double pitch, double roll) {
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
       Eigen::AngleAxisd(-pitch, Eigen::Vector3d::UnitY()) *
       Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
          .toRotationMatrix();
  return Frame(origin, r);
}

Eigen::Vector3d Frame::to_local(const Point3& world) const {
  return axes_.transpose() * (world - origin_);
}

Point3 Frame::to_world(const Eigen::Vector3d& local) const { return origin_ + axes_ * local; }

Frame Frame::translated_to(const Point3& new_origin) const { return Frame(new_origin, axes_); }

Direction direction_of_vector(const Eigen::Vector3d& v) {
  const double horizontal = std::hypot(v.x(), v.y());
  if (horizontal == 0.0 && v.z() == 0.0) {
    throw ModelError("degenerate direction");
  }
  Direction d;
  d.az = (horizontal == 0.0) ? 0.0 : std::atan2(v.y(), v.x());
  if (d.az >= kPi) d.az = -kPi;
  d.el = std::atan2(v.z(), horizontal);
  constexpr double kHalfPi = kPi / 2.0;
  if (d.el >= kHalfPi) d.el = std::nextafter(kHalfPi, 0.0);
  return d;
}

Direction direction_of(const Point3& p, const Frame& f) {
  return direction_of_vector(f.to_local(p));
}

double range_of(const Point3& p, const Frame& f) { return (p - f.origin()).norm(); }

Eigen::Vector3d unit_vector(const Direction& d) {
  const double ce = std::cos(d.el);
  return {ce * std::cos(d.az), ce * std::sin(d.az), std::sin(d.el)};
}

double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace risradar
