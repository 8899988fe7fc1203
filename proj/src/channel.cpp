#include "risradar/channel.hpp"

#include <cmath>

namespace risradar {

void LossBudget::validate() const {
  for (double l : {tx_direct, tx_ris, rx_direct, rx_ris}) {
    if (!(l >= 1.0)) throw ModelError("loss factors must be >= 1");
  }
}

void RadiatedPower::validate() const {
  if (!(tx_power > 0.0)) throw ModelError("radiated power must be positive");
  if (!(noise_power > 0.0)) throw ModelError("noise power must be positive");
  if (!(target_mean_square > 0.0)) throw ModelError("target mean-square response must be positive");
}

namespace {

double front_cosines(const Direction& d) {
  if (!(std::abs(d.az) < kPi / 2) || !(std::abs(d.el) < kPi / 2)) return 0.0;
  return std::cos(d.az) * std::cos(d.el);
}

constexpr double k4Pi = 4.0 * kPi;

}  // namespace

double ris_aperture_factor(double element_area, const Direction& incoming) {
  return element_area * front_cosines(incoming);
}

double ris_gain_factor(double element_area, double wavelength, const Direction& outgoing) {
  return (k4Pi * element_area / (wavelength * wavelength)) * front_cosines(outgoing);
}

double bistatic_rcs(double element_area, double wavelength, const Direction& incoming,
                    const Direction& outgoing) {
  if (!(element_area > 0.0) || !(wavelength > 0.0)) {
    throw ModelError("bistatic RCS needs positive area and wavelength");
  }
  // grouped so that swapping the two directions is bit-exact
  return (k4Pi * element_area * element_area / (wavelength * wavelength)) *
         (front_cosines(incoming) * front_cosines(outgoing));
}

GammaChannels gamma_channels(const Deployment& dep, const GeometrySummary& geo,
                             const RadiatedPower& power, const LossBudget& losses,
                             const PathIndicators& paths) {
  const double lambda = dep.wavelength;
  const double k = kTwoPi / lambda;
  const double per_element = power.tx_power / static_cast<double>(dep.transmitter.size());
  const auto& tx_pat = dep.transmitter.spec.pattern;
  const auto& rx_pat = dep.receiver.spec.pattern;
  GammaChannels g{};

  if (paths.tx_direct) {
    const double rho = geo.tx.target_range;
    const double mag2 = per_element * element_gain(tx_pat, geo.tx.target_direction) /
                        (k4Pi * rho * rho * losses.tx_direct);
    g.tx_direct = std::polar(std::sqrt(mag2), -k * rho);
  }
  if (paths.forward_ris && dep.forward_ris && geo.tx.ris) {
    const auto& link = *geo.tx.ris;
    const double zeta = bistatic_rcs(dep.forward_ris->spec.element_area(), lambda,
                                     link.radar_from_ris, link.target_from_ris);
    const double mag2 = per_element * element_gain(tx_pat, link.ris_from_radar) * zeta /
                        (k4Pi * k4Pi * std::pow(link.center_distance * link.target_range, 2) *
                         losses.tx_ris);
    g.tx_ris = std::polar(std::sqrt(mag2), -k * (link.center_distance + link.target_range));
  }
  if (paths.rx_direct) {
    const double rho = geo.rx.target_range;
    const double mag2 = element_gain(rx_pat, geo.rx.target_direction) * lambda * lambda /
                        (k4Pi * k4Pi * rho * rho * losses.rx_direct);
    g.rx_direct = std::polar(std::sqrt(mag2), -k * rho);
  }
  if (paths.backward_ris && dep.backward_ris && geo.rx.ris) {
    const auto& link = *geo.rx.ris;
    const double zeta = bistatic_rcs(dep.backward_ris->spec.element_area(), lambda,
                                     link.target_from_ris, link.radar_from_ris);
    const double mag2 = zeta * element_gain(rx_pat, link.ris_from_radar) * lambda * lambda /
                        (k4Pi * k4Pi * k4Pi *
                         std::pow(link.target_range * link.center_distance, 2) * losses.rx_ris);
    g.rx_ris = std::polar(std::sqrt(mag2), -k * (link.target_range + link.center_distance));
  }
  return g;
}

CouplingMatrices coupling_matrices(const Deployment& dep, const GeometrySummary& geo,
                                   const GammaChannels& gammas) {
  const double lambda = dep.wavelength;
  const double k = kTwoPi / lambda;
  CouplingMatrices c;
  const auto nt = static_cast<Eigen::Index>(dep.transmitter.size());
  const auto nq = static_cast<Eigen::Index>(dep.receiver.size());

  if (dep.forward_ris && geo.tx.ris) {
    const auto& link = *geo.tx.ris;
    const auto& grid = link.elements;  // N_s x N_r
    const auto ns = grid.ris_count();
    c.forward = CMatrix::Zero(ns, nt);
    if (gammas.tx_ris != cdouble(0.0, 0.0)) {
      const auto& pat = dep.transmitter.spec.pattern;
      const double area = dep.forward_ris->spec.element_area();
      const double ref = element_gain(pat, link.ris_from_radar) *
                         ris_aperture_factor(area, link.radar_from_ris) /
                         (link.center_distance * link.center_distance);
      for (Eigen::Index n = 0; n < ns; ++n) {
        for (Eigen::Index j = 0; j < nt; ++j) {
          const double dist = grid.distance(n, j);
          const double num =
              element_gain(pat, {grid.ris_az_at_radar(n, j), grid.ris_el_at_radar(n, j)}) *
              ris_aperture_factor(area, {grid.radar_az_at_ris(n, j), grid.radar_el_at_ris(n, j)}) /
              (dist * dist);
          c.forward(n, j) = std::polar(std::sqrt(num / ref), -k * (dist - link.center_distance));
        }
      }
    }
  } else {
    c.forward = CMatrix::Zero(0, nt);
  }

  if (dep.backward_ris && geo.rx.ris) {
    const auto& link = *geo.rx.ris;
    const auto& grid = link.elements;  // N_r x N_s
    const auto ns = grid.radar_count();
    c.backward = CMatrix::Zero(nq, ns);
    if (gammas.rx_ris != cdouble(0.0, 0.0)) {
      const auto& pat = dep.receiver.spec.pattern;
      const double area = dep.backward_ris->spec.element_area();
      const double ref = element_gain(pat, link.ris_from_radar) *
                         ris_gain_factor(area, lambda, link.radar_from_ris) /
                         (link.center_distance * link.center_distance);
      for (Eigen::Index q = 0; q < nq; ++q) {
        for (Eigen::Index n = 0; n < ns; ++n) {
          const double dist = grid.distance(q, n);
          const double num =
              element_gain(pat, {grid.ris_az_at_radar(q, n), grid.ris_el_at_radar(q, n)}) *
              ris_gain_factor(area, lambda,
                              {grid.radar_az_at_ris(q, n), grid.radar_el_at_ris(q, n)}) /
              (dist * dist);
          c.backward(q, n) = std::polar(std::sqrt(num / ref), -k * (dist - link.center_distance));
        }
      }
    }
  } else {
    c.backward = CMatrix::Zero(nq, 0);
  }
  return c;
}

CMatrix SideChannel::plane_wave_coupling() const { return p_r * p_s.transpose(); }

SideChannel SideChannel::without_ris() const {
  SideChannel s = *this;
  s.gamma_s = 0.0;
  s.coupling.setZero();
  return s;
}

ChannelSet ChannelSet::with_paths(bool forward_ris, bool backward_ris) const {
  return {forward_ris ? tx : tx.without_ris(), backward_ris ? rx : rx.without_ris()};
}

ChannelSet build_channels(const Deployment& dep, const GeometrySummary& geo,
                          const RadiatedPower& power, const LossBudget& losses,
                          const PathIndicators& paths) {
  losses.validate();
  power.validate();
  const double lambda = dep.wavelength;
  const GammaChannels g = gamma_channels(dep, geo, power, losses, paths);
  CouplingMatrices c = coupling_matrices(dep, geo, g);

  ChannelSet ch;
  ch.tx.gamma_r = g.tx_direct;
  ch.tx.gamma_s = g.tx_ris;
  ch.tx.v_r = steering_vector(dep.transmitter.spec, geo.tx.target_direction, lambda);
  ch.tx.coupling = c.forward.transpose();
  if (dep.forward_ris && geo.tx.ris) {
    ch.tx.v_s = steering_vector(dep.forward_ris->spec, geo.tx.ris->target_from_ris, lambda);
    ch.tx.p_r = steering_vector(dep.transmitter.spec, geo.tx.ris->ris_from_radar, lambda);
    ch.tx.p_s = steering_vector(dep.forward_ris->spec, geo.tx.ris->radar_from_ris, lambda);
  }

  ch.rx.gamma_r = g.rx_direct;
  ch.rx.gamma_s = g.rx_ris;
  ch.rx.v_r = steering_vector(dep.receiver.spec, geo.rx.target_direction, lambda);
  ch.rx.coupling = std::move(c.backward);
  if (dep.backward_ris && geo.rx.ris) {
    ch.rx.v_s = steering_vector(dep.backward_ris->spec, geo.rx.ris->target_from_ris, lambda);
    ch.rx.p_r = steering_vector(dep.receiver.spec, geo.rx.ris->ris_from_radar, lambda);
    ch.rx.p_s = steering_vector(dep.backward_ris->spec, geo.rx.ris->radar_from_ris, lambda);
  }
  return ch;
}

std::string to_string(Contributor c) {
  switch (c) {
    case Contributor::Radar: return "Radar";
    case Contributor::Ris: return "RIS";
    case Contributor::RadarAndRis: return "Radar&RIS";
  }
  return "?";
}

std::string ConfigurationLabel::to_string() const {
  return std::string(los ? "LOS" : "NLOS") + " " + risradar::to_string(illuminated_by) +
         " - " + risradar::to_string(observed_by);
}

ConfigurationLabel classify_configuration(cdouble tx_direct, cdouble rx_direct, cdouble tx_ris,
                                          cdouble rx_ris) {
  const cdouble zero(0.0, 0.0);
  auto contributor = [](bool radar, bool ris) {
    if (radar && ris) return Contributor::RadarAndRis;
    return radar ? Contributor::Radar : Contributor::Ris;
  };
  const bool tr = tx_direct != zero, rr = rx_direct != zero;
  const bool ts = tx_ris != zero, rs = rx_ris != zero;
  if ((!tr && !ts) || (!rr && !rs)) throw ModelError("target unreachable");
  return {tr && rr, contributor(tr, ts), contributor(rr, rs)};
}

}  // namespace risradar
