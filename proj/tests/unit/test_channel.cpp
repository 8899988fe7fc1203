#include <doctest.h>

#include <random>

#include "risradar/channel.hpp"
#include "risradar/scenario.hpp"
#include "support.hpp"

using namespace risradar;

namespace {

const std::string kDefault = std::string(RISRADAR_SCENARIO_DIR) + "/bistatic_default.json";

ElementPattern isotropic() { return {1.0, 0.0, 0.0}; }

/// Radar at the origin facing +x, RIS facing back towards it.
Deployment facing_pair(double distance, double bearing, int radar_elements, int ris_side,
                       double lambda = 0.06) {
  Deployment d;
  d.wavelength = lambda;
  d.transmitter = {make_ula(radar_elements, lambda / 2, lambda / 2, lambda, isotropic()), Frame()};
  d.receiver = d.transmitter;
  const Point3 c(distance * std::cos(bearing), distance * std::sin(bearing), 0.0);
  d.forward_ris = PlacedArray{make_ris_grid(ris_side * ris_side, lambda / 2),
                              Frame::from_euler(c, kPi + bearing)};
  d.backward_ris = d.forward_ris;
  d.target_size_tx = d.target_size_rx = 10 * lambda;
  return d;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("bistatic RCS examples") {
  const double lambda = 0.06;
  const double area = lambda * lambda / 4;
  CHECK(bistatic_rcs(area, lambda, {0, 0}, {0, 0}) == doctest::Approx(kPi * lambda * lambda / 4));
  CHECK(bistatic_rcs(area, lambda, {deg2rad(60), 0}, {0, 0}) ==
        doctest::Approx(kPi * lambda * lambda / 8));
  CHECK(bistatic_rcs(area, lambda, {deg2rad(100), 0}, {0, 0}) == 0.0);
  CHECK(bistatic_rcs(area, lambda, {0, 0}, {0.1, deg2rad(95)}) == 0.0);
  CHECK_THROWS_AS(bistatic_rcs(0.0, lambda, {0, 0}, {0, 0}), ModelError);
  CHECK_THROWS_AS(bistatic_rcs(area, -1.0, {0, 0}, {0, 0}), ModelError);
}

TEST_CASE("bistatic RCS is reciprocal") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> az(-kPi, kPi), el(-kPi / 2, kPi / 2);
  for (int t = 0; t < 1000; ++t) {
    const Direction a{az(rng), el(rng)}, b{az(rng), el(rng)};
    CHECK(bistatic_rcs(0.002, 0.05, a, b) == bistatic_rcs(0.002, 0.05, b, a));
  }
}

TEST_CASE("direct gamma follows the radar equation") {
  const double lambda = 0.06;
  Deployment d;
  d.wavelength = lambda;
  d.transmitter = {make_ula(1, lambda / 2, lambda / 2, lambda, isotropic()), Frame()};
  d.receiver = d.transmitter;
  const double rho = 1.0 / (2.0 * std::sqrt(kPi));
  const GammaChannels g = gamma_channels(d, summarize_geometry(d, {rho, 0.0, 0.0}), {1.0, 1.0, 1.0}, {});
  CHECK(std::norm(g.tx_direct) == doctest::Approx(1.0).epsilon(1e-14));
  const double phase = std::remainder(std::arg(g.tx_direct) + kTwoPi * rho / lambda, kTwoPi);
  CHECK(std::abs(phase) < 1e-12);
  CHECK(g.tx_ris == cdouble(0.0, 0.0));
  CHECK(g.rx_ris == cdouble(0.0, 0.0));
  // receive direct: lambda^2 / (4 pi)^2 / rho^2 with unit gain
  CHECK(std::norm(g.rx_direct) ==
        doctest::Approx(lambda * lambda / (16 * kPi * kPi * rho * rho)).epsilon(1e-14));

  const GammaChannels far =
      gamma_channels(d, summarize_geometry(d, {2 * rho, 0.0, 0.0}), {1.0, 1.0, 1.0}, {});
  CHECK(std::norm(far.tx_direct) == doctest::Approx(std::norm(g.tx_direct) / 4).epsilon(1e-14));

  // a loss factor divides the power
  const GammaChannels lossy = gamma_channels(d, summarize_geometry(d, {rho, 0.0, 0.0}),
                                             {1.0, 1.0, 1.0}, {2.0, 1.0, 1.0, 1.0});
  CHECK(std::norm(lossy.tx_direct) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("indicator gating removes the RIS channels") {
  const ScenarioConfig cfg = load_scenario(kDefault);
  const Deployment dep = make_deployment(cfg);
  const GeometrySummary geo = summarize_geometry(dep, cfg.target_position());
  PathIndicators no_fwd;
  no_fwd.forward_ris = false;
  const ChannelSet ch = build_channels(dep, geo, cfg.power, cfg.losses, no_fwd);
  CHECK(ch.tx.gamma_s == cdouble(0.0, 0.0));
  CHECK(ch.tx.coupling.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ch.rx.gamma_s != cdouble(0.0, 0.0));
  CHECK(ch.rx.coupling.cwiseAbs().minCoeff() > 0.0);
  const ChannelSet full = build_channels(dep, geo, cfg.power, cfg.losses);
  CHECK(full.tx.gamma_s != cdouble(0.0, 0.0));
  CHECK(full.tx.coupling.cwiseAbs().minCoeff() > 0.0);
  const ChannelSet reduced = full.with_paths(true, false);
  CHECK(reduced.rx.gamma_s == cdouble(0.0, 0.0));
  CHECK(reduced.rx.coupling.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling matrices have the documented shapes and central entry") {
  const ScenarioConfig cfg = load_scenario(kDefault);
  const Deployment dep = make_deployment(cfg);
  const GeometrySummary geo = summarize_geometry(dep, cfg.target_position());
  const ChannelSet ch = build_channels(dep, geo, cfg.power, cfg.losses);
  const CMatrix fwd = ch.forward_matrix();
  CHECK(fwd.rows() == 225);
  CHECK(fwd.cols() == 3);
  CHECK(ch.backward_matrix().rows() == 8);
  CHECK(ch.backward_matrix().cols() == 225);
  const int n0 = central_element(dep.forward_ris->spec);
  const int j0 = central_element(dep.transmitter.spec);
  REQUIRE(n0 == 112);
  REQUIRE(j0 == 1);
  CHECK(std::abs(fwd(n0, j0) - cdouble(1.0, 0.0)) < 1e-12);
  // steering vectors are unit modulus and referenced to the centre element
  for (const CVector* v : {&ch.tx.v_r, &ch.tx.v_s, &ch.tx.p_r, &ch.tx.p_s, &ch.rx.v_s}) {
    CHECK((v->cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("coupling magnitudes match a world-frame oracle") {
  // With isotropic radar elements the only angular factor in the forward
  // matrix is the RIS aperture cosine, which equals the boresight projection.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> bearing(-0.6, 0.6), dist(0.3, 3.0);
  for (int t = 0; t < 10; ++t) {
    Deployment d = facing_pair(dist(rng), bearing(rng), 3, 5);
    d.forward_ris->frame = Frame::from_euler(d.forward_ris->frame.origin(),
                                            kPi + bearing(rng), 0.2 * bearing(rng));
    const Point3 target(0.0, 500.0, 0.0);
    const GeometrySummary geo = summarize_geometry(d, target);
    const GammaChannels g = gamma_channels(d, geo, {}, {});
    if (g.tx_ris == cdouble(0.0, 0.0)) continue;
    const CouplingMatrices c = coupling_matrices(d, geo, g);
    const Eigen::Vector3d boresight = d.forward_ris->frame.axes().col(0);
    const Point3 rc = d.forward_ris->frame.origin(), tc = d.transmitter.frame.origin();
    const double ref = boresight.dot((tc - rc).normalized()) / (tc - rc).squaredNorm();
    const auto ris_pos = d.forward_ris->element_positions();
    const auto tx_pos = d.transmitter.element_positions();
    for (std::size_t n = 0; n < ris_pos.size(); ++n) {
      for (std::size_t j = 0; j < tx_pos.size(); ++j) {
        const Eigen::Vector3d u = tx_pos[j] - ris_pos[n];
        const double mag = std::sqrt(boresight.dot(u.normalized()) / u.squaredNorm() / ref);
        const double excess = u.norm() - (tc - rc).norm();
        const cdouble want = std::polar(mag, -kTwoPi / d.wavelength * excess);
        CHECK(std::abs(c.forward(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) -
                       want) < 1e-9);
      }
    }
  }
}

TEST_CASE("single-element arrays give a unit coupling") {
  Deployment d = facing_pair(2.0, 0.2, 1, 1);
  const GeometrySummary geo = summarize_geometry(d, {-300.0, 300.0, 0.0});
  const GammaChannels g = gamma_channels(d, geo, {}, {});
  REQUIRE(g.tx_ris != cdouble(0.0, 0.0));
  const CouplingMatrices c = coupling_matrices(d, geo, g);
  CHECK(std::abs(c.forward(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(c.backward(0, 0) - 1.0) < 1e-14);
  GammaChannels silent = g;
  silent.tx_ris = 0.0;
  silent.rx_ris = 0.0;
  const CouplingMatrices z = coupling_matrices(d, geo, silent);
  CHECK(z.forward.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.backward.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("RIS gamma scales with the RCS and the inverse squared path product") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> bearing(-0.5, 0.5), dist(1.0, 20.0), ty(200.0, 2000.0);
  double reference = 0.0;
  for (int t = 0; t < 30; ++t) {
    const Deployment d = facing_pair(dist(rng), bearing(rng), 1, 3);
    const Point3 target(-300.0, ty(rng), 40.0);
    const GeometrySummary geo = summarize_geometry(d, target);
    const GammaChannels g = gamma_channels(d, geo, {2.0, 1.0, 1.0}, {});
    const auto& link = *geo.tx.ris;
    const double zeta = bistatic_rcs(d.forward_ris->spec.element_area(), d.wavelength,
                                     link.radar_from_ris, link.target_from_ris);
    if (zeta == 0.0) continue;
    const double k = std::norm(g.tx_ris) * std::pow(link.center_distance * link.target_range, 2) / zeta;
    if (reference == 0.0) reference = k;
    CHECK(k == doctest::Approx(reference).epsilon(1e-12));
    // (4 pi)^2 with P / N_r = 2 and unit gain
    CHECK(k == doctest::Approx(2.0 / (16 * kPi * kPi)).epsilon(1e-12));
  }
  CHECK(reference > 0.0);
}

TEST_CASE("coupling converges to the plane-wave form at the far-field curvature rate") {
  // The leftover is the quadratic wavefront term k |dp|^2 / (2 delta) with
  // |dp| <= (D_r + D_s) / 2; against 2 max(D_r, D_s)^2 / lambda this reads
  // pi (D_r + D_s)^2 / (8 max^2) per multiple.
  for (int side : {3, 9, 15}) {
    double previous = 0.0;
    for (double multiple : {10.0, 100.0, 1000.0}) {
      Deployment d = facing_pair(1.0, 0.3, 3, side);
      const double dr = array_max_size(d.transmitter.spec);
      const double ds = array_max_size(d.forward_ris->spec);
      const double ff = 2.0 * std::pow(std::max(dr, ds), 2) / d.wavelength;
      const double curvature = kPi * std::pow((dr + ds) / std::max(dr, ds), 2) / 8.0;
      d = facing_pair(multiple * ff, 0.3, 3, side);
      const GeometrySummary geo = summarize_geometry(d, {0.0, 3.0 * multiple * ff, 0.0});
      const ChannelSet ch = build_channels(d, geo, {}, {});
      REQUIRE(ch.tx.gamma_s != cdouble(0.0, 0.0));
      const double err = (ch.tx.coupling - ch.tx.plane_wave_coupling()).cwiseAbs().maxCoeff();
      CHECK(err <= curvature / multiple);
      if (previous > 0.0) CHECK(previous / err == doctest::Approx(10.0).epsilon(0.02));
      previous = err;
    }
  }
}

TEST_CASE("loss and power validation") {
  LossBudget l;
  l.rx_ris = 0.5;
  CHECK_THROWS_AS(l.validate(), ModelError);
  RadiatedPower p;
  p.noise_power = 0.0;
  CHECK_THROWS_AS(p.validate(), ModelError);
  const Deployment d = facing_pair(2.0, 0.0, 1, 1);
  const GeometrySummary geo = summarize_geometry(d, {0.0, 300.0, 0.0});
  CHECK_THROWS_AS(build_channels(d, geo, {}, l), ModelError);
  CHECK_THROWS_AS(build_channels(d, geo, p, {}), ModelError);
}

TEST_CASE("configuration table") {
  const cdouble on(1.0, 0.5), off(0.0, 0.0);
  struct Row {
    cdouble tr, rr, ts, rs;
    const char* label;
  };
  const Row rows[] = {
      {on, on, on, on, "LOS Radar&RIS - Radar&RIS"},
      {on, on, off, on, "LOS Radar - Radar&RIS"},
      {on, on, on, off, "LOS Radar&RIS - Radar"},
      {on, on, off, off, "LOS Radar - Radar"},
      {on, off, on, on, "NLOS Radar&RIS - RIS"},
      {on, off, off, on, "NLOS Radar - RIS"},
      {off, off, on, on, "NLOS RIS - RIS"},
      {off, on, on, on, "NLOS RIS - Radar&RIS"},
      {off, on, on, off, "NLOS RIS - Radar"},
  };
  for (const auto& r : rows) {
    CHECK(classify_configuration(r.tr, r.rr, r.ts, r.rs).to_string() == r.label);
  }
  CHECK_THROWS_WITH_AS(classify_configuration(off, on, off, on), "target unreachable", ModelError);
  CHECK_THROWS_WITH_AS(classify_configuration(on, off, on, off), "target unreachable", ModelError);
  CHECK_THROWS_AS(classify_configuration(off, off, off, off), ModelError);
}

}  // TEST_SUITE
