#include "risradar/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace risradar {

ElementGrid ElementGrid::transposed() const {
  return {distance.transpose(), ris_az_at_radar.transpose(), ris_el_at_radar.transpose(),
          radar_az_at_ris.transpose(), radar_el_at_ris.transpose()};
}

ElementGrid element_geometry(const PlacedArray& radar, const PlacedArray& ris) {
  const auto radar_pos = radar.element_positions();
  const auto ris_pos = ris.element_positions();
  const auto ns = static_cast<Eigen::Index>(ris_pos.size());
  const auto nr = static_cast<Eigen::Index>(radar_pos.size());
  ElementGrid g;
  g.distance.resize(ns, nr);
  g.ris_az_at_radar.resize(ns, nr);
  g.ris_el_at_radar.resize(ns, nr);
  g.radar_az_at_ris.resize(ns, nr);
  g.radar_el_at_ris.resize(ns, nr);
  const Eigen::Matrix3d to_radar = radar.frame.axes().transpose();
  const Eigen::Matrix3d to_ris = ris.frame.axes().transpose();
  for (Eigen::Index n = 0; n < ns; ++n) {
    for (Eigen::Index j = 0; j < nr; ++j) {
      const Eigen::Vector3d v = ris_pos[static_cast<std::size_t>(n)] -
                                radar_pos[static_cast<std::size_t>(j)];
      const double dist = v.norm();
      if (dist == 0.0) throw ModelError("radar and RIS elements overlap");
      g.distance(n, j) = dist;
      const Direction at_radar = direction_of_vector(to_radar * v);
      const Direction at_ris = direction_of_vector(to_ris * (-v));
      g.ris_az_at_radar(n, j) = at_radar.az;
      g.ris_el_at_radar(n, j) = at_radar.el;
      g.radar_az_at_ris(n, j) = at_ris.az;
      g.radar_el_at_ris(n, j) = at_ris.el;
    }
  }
  return g;
}

namespace {

SideGeometry side_geometry(const PlacedArray& radar, const std::optional<PlacedArray>& ris,
                           const Point3& target, bool backward) {
  SideGeometry s;
  s.target_range = range_of(target, radar.frame);
  s.target_direction = direction_of(target, radar.frame);
  if (ris) {
    RisLink link;
    link.center_distance = range_of(ris->frame.origin(), radar.frame);
    link.ris_from_radar = direction_of(ris->frame.origin(), radar.frame);
    link.radar_from_ris = direction_of(radar.frame.origin(), ris->frame);
    link.target_range = range_of(target, ris->frame);
    link.target_from_ris = direction_of(target, ris->frame);
    link.elements = element_geometry(radar, *ris);
    if (backward) link.elements = link.elements.transposed();
    s.ris = std::move(link);
  }
  return s;
}

double min_element_distance(const PlacedArray& a, const PlacedArray& b) {
  double best = std::numeric_limits<double>::infinity();
  const auto pa = a.element_positions();
  const auto pb = b.element_positions();
  for (const auto& x : pa)
    for (const auto& y : pb) best = std::min(best, (x - y).norm());
  return best;
}

double max_aspect_angle(const PlacedArray& radar, const PlacedArray& ris, const Point3& target) {
  double worst = 0.0;
  const auto pr = radar.element_positions();
  const auto ps = ris.element_positions();
  for (const auto& x : pr) {
    const Eigen::Vector3d a = x - target;
    for (const auto& y : ps) {
      const Eigen::Vector3d b = y - target;
      if (a.norm() == 0.0 || b.norm() == 0.0) return kPi;
      worst = std::max(worst, angle_between(a, b));
    }
  }
  return worst;
}

}  // namespace

GeometrySummary summarize_geometry(const Deployment& dep, const Point3& target) {
  return {side_geometry(dep.transmitter, dep.forward_ris, target, false),
          side_geometry(dep.receiver, dep.backward_ris, target, true)};
}

double far_field_bound(double size_a, double size_b, double wavelength) {
  return std::max({2.0 * size_a * size_a / wavelength, 2.0 * size_b * size_b / wavelength,
                   5.0 * size_a, 5.0 * size_b, 1.6 * wavelength});
}

bool FarFieldReport::all_pass() const {
  auto ok = [](const auto& c) { return !c.applicable || c.pass; };
  return std::all_of(checks.begin(), checks.end(), ok) &&
         std::all_of(aspect.begin(), aspect.end(), ok);
}

const FarFieldCheck& FarFieldReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw ModelError("no far-field check named " + name);
}

FarFieldReport far_field_checks(const Deployment& dep, const Point3& target,
                                double aspect_factor) {
  const double lambda = dep.wavelength;
  FarFieldReport r;
  auto add = [&](std::string name, bool applicable, double lhs, double rhs) {
    r.checks.push_back({std::move(name), lhs, rhs, applicable, applicable && lhs >= rhs});
  };

  const double d_tx = array_max_size(dep.transmitter.spec);
  const double d_rx = array_max_size(dep.receiver.spec);

  // Target versus each RIS.
  if (dep.forward_ris) {
    add("target-forward-ris", true, (target - dep.forward_ris->frame.origin()).norm(),
        far_field_bound(dep.target_size_tx, array_max_size(dep.forward_ris->spec), lambda));
  } else {
    add("target-forward-ris", false, 0.0, 0.0);
  }
  if (dep.backward_ris) {
    add("target-backward-ris", true, (target - dep.backward_ris->frame.origin()).norm(),
        far_field_bound(dep.target_size_rx, array_max_size(dep.backward_ris->spec), lambda));
  } else {
    add("target-backward-ris", false, 0.0, 0.0);
  }

  // Target versus each radar array.
  add("target-transmitter", true, (target - dep.transmitter.frame.origin()).norm(),
      far_field_bound(dep.target_size_tx, d_tx, lambda));
  add("target-receiver", true, (target - dep.receiver.frame.origin()).norm(),
      far_field_bound(dep.target_size_rx, d_rx, lambda));

  // Element pairs across each radar-RIS hop.
  r.min_separation_tx = far_field_bound(
      element_max_size(dep.transmitter.spec),
      dep.forward_ris ? element_max_size(dep.forward_ris->spec) : 0.0, lambda);
  r.min_separation_rx = far_field_bound(
      element_max_size(dep.receiver.spec),
      dep.backward_ris ? element_max_size(dep.backward_ris->spec) : 0.0, lambda);
  if (dep.forward_ris) {
    add("transmitter-forward-ris-elements", true,
        min_element_distance(dep.transmitter, *dep.forward_ris), r.min_separation_tx);
    const double ds = array_max_size(dep.forward_ris->spec);
    r.radar_ris_far_field_tx = 2.0 * std::pow(std::max(d_tx, ds), 2) / lambda;
  } else {
    add("transmitter-forward-ris-elements", false, 0.0, 0.0);
  }
  if (dep.backward_ris) {
    add("receiver-backward-ris-elements", true,
        min_element_distance(dep.receiver, *dep.backward_ris), r.min_separation_rx);
    const double ds = array_max_size(dep.backward_ris->spec);
    r.radar_ris_far_field_rx = 2.0 * std::pow(std::max(d_rx, ds), 2) / lambda;
  } else {
    add("receiver-backward-ris-elements", false, 0.0, 0.0);
  }

  auto aspect = [&](std::string name, const PlacedArray& radar,
                    const std::optional<PlacedArray>& ris, double target_size) {
    AspectAngleCheck a;
    a.name = std::move(name);
    a.factor = aspect_factor;
    a.resolution = target_size > 0.0 ? lambda / target_size
                                     : std::numeric_limits<double>::infinity();
    if (ris) {
      a.applicable = true;
      a.max_angle = max_aspect_angle(radar, *ris, target);
      a.pass = a.resolution >= aspect_factor * a.max_angle;
    }
    r.aspect.push_back(a);
  };
  aspect("aspect-transmit", dep.transmitter, dep.forward_ris, dep.target_size_tx);
  aspect("aspect-receive", dep.receiver, dep.backward_ris, dep.target_size_rx);
  return r;
}

}  // namespace risradar
