#include <cmath>

#include "risradar/optim.hpp"

namespace risradar {

UnitModulusSolution farfield_phases(const SideChannel& side) {
  const auto ns = side.ris_elements();
  UnitModulusSolution s;
  s.phases = RVector::Zero(ns);
  if (ns > 0) {
    if (side.p_r.size() != side.radar_elements() || side.p_s.size() != ns) {
      throw ModelError("far-field design needs the plane-wave steering vectors");
    }
    const double cross = std::arg(std::conj(side.gamma_r) * side.v_r.dot(side.p_r));
    for (Eigen::Index n = 0; n < ns; ++n) {
      s.phases[n] = wrap_phase(-std::arg(side.gamma_s * side.p_s[n] * side.v_s[n]) - cross);
    }
  }
  s.z = lifted_from_phases(s.phases);
  CVector x = s.z.head(ns);
  CVector e = side.gamma_r * side.v_r;
  if (ns > 0) {
    e += side.gamma_s * side.p_r * (side.p_s.cwiseProduct(side.v_s).transpose() * x)(0, 0);
  }
  s.objective = e.squaredNorm();
  return s;
}

double farfield_optimum(const SideChannel& side) {
  const double nr = static_cast<double>(side.radar_elements());
  const double ns = static_cast<double>(side.ris_elements());
  const double gr = std::abs(side.gamma_r);
  const double gs = std::abs(side.gamma_s);
  double value = nr * gr * gr;
  if (side.ris_elements() > 0) {
    value += nr * ns * ns * gs * gs +
             2.0 * ns * std::abs(std::conj(side.gamma_r) * side.gamma_s * side.v_r.dot(side.p_r));
  }
  return value;
}

namespace {

SideFarFieldGain side_gain(const SideChannel& side, const PlacedArray& radar,
                           const std::optional<PlacedArray>& ris, const SideGeometry& sg,
                           double direct_loss, double ris_loss, double wavelength,
                           bool transmit_side) {
  SideFarFieldGain g;
  if (!side.has_ris() || !ris || !sg.ris) return g;
  const auto& link = *sg.ris;
  const double ns = static_cast<double>(side.ris_elements());
  const double nr = static_cast<double>(side.radar_elements());
  const double area = ris->spec.element_area();
  g.bound_value = std::pow(ns * area / (link.center_distance * wavelength), 2);
  g.within_bound = g.bound_value <= 0.25;

  const double alignment = std::abs(side.v_r.dot(side.p_r)) / nr;
  const bool present = side.gamma_s != cdouble(0.0, 0.0);
  if (present) {
    const double zeta = transmit_side
                            ? bistatic_rcs(area, wavelength, link.radar_from_ris, link.target_from_ris)
                            : bistatic_rcs(area, wavelength, link.target_from_ris, link.radar_from_ris);
    const double ratio = element_gain(radar.spec.pattern, link.ris_from_radar) * direct_loss /
                         (element_gain(radar.spec.pattern, sg.target_direction) * ris_loss);
    g.ris_term = ratio * ns * ns * zeta / (4.0 * kPi * link.center_distance * link.center_distance);
  }
  g.gain = 1.0 + g.ris_term + 2.0 * std::sqrt(g.ris_term) * alignment;

  const double rel = std::abs(side.gamma_s) / std::abs(side.gamma_r);
  g.exact_gain = 1.0 + ns * ns * rel * rel + 2.0 * ns * rel * alignment;
  return g;
}

}  // namespace

FarFieldGains farfield_gains(const Deployment& dep, const GeometrySummary& geo,
                             const LossBudget& losses, const ChannelSet& ch) {
  if (ch.tx.gamma_r == cdouble(0.0, 0.0) || ch.rx.gamma_r == cdouble(0.0, 0.0)) {
    throw ModelError("far-field gains need a line-of-sight configuration");
  }
  return {side_gain(ch.tx, dep.transmitter, dep.forward_ris, geo.tx, losses.tx_direct,
                    losses.tx_ris, dep.wavelength, true),
          side_gain(ch.rx, dep.receiver, dep.backward_ris, geo.rx, losses.rx_direct,
                    losses.rx_ris, dep.wavelength, false)};
}

}  // namespace risradar
