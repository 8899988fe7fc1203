#include <doctest.h>

#include <random>

#include "risradar/layout.hpp"
#include "support.hpp"

using namespace risradar;

namespace {

Deployment simple_deployment(double ris_distance) {
  const double lambda = 0.06;
  const auto pattern = ElementPattern::from_beamwidths(deg2rad(120), deg2rad(60));
  Deployment d;
  d.wavelength = lambda;
  d.transmitter = {make_ula(3, lambda / 2, lambda / 2, lambda, pattern), Frame()};
  d.receiver = {make_ula(4, lambda / 2, lambda / 2, lambda, pattern),
                Frame::from_euler({0.0, 50.0, 0.0}, 0.0)};
  d.forward_ris = PlacedArray{make_ris_grid(9, lambda / 2),
                              Frame::from_euler({ris_distance, 0.0, 0.0}, kPi)};
  d.backward_ris = PlacedArray{make_ris_grid(16, lambda / 2),
                               Frame::from_euler({ris_distance, 50.0, 0.0}, kPi)};
  d.target_size_tx = d.target_size_rx = 10 * lambda;
  return d;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("direction_of follows the azimuth/elevation convention") {
  const Frame f;
  Direction d = direction_of({2.0, 0.0, 0.0}, f);
  CHECK(d.az == doctest::Approx(0.0));
  CHECK(d.el == doctest::Approx(0.0));
  d = direction_of({0.0, 3.0, 0.0}, f);
  CHECK(d.az == doctest::Approx(kPi / 2));
  CHECK(d.el == doctest::Approx(0.0));
  d = direction_of({1.0, 0.0, 1.0}, f);
  CHECK(d.az == doctest::Approx(0.0));
  CHECK(d.el == doctest::Approx(kPi / 4));
  CHECK_THROWS_WITH_AS(direction_of({0.0, 0.0, 0.0}, f), "degenerate direction", ModelError);
}

TEST_CASE("directions stay in the half-open ranges") {
  const Frame f;
  CHECK(direction_of({-1.0, 0.0, 0.0}, f).az == doctest::Approx(-kPi));
  CHECK(direction_of({-1.0, 0.0, 0.0}, f).az < kPi);
  const Direction up = direction_of({0.0, 0.0, 5.0}, f);
  CHECK(up.el < kPi / 2);
  CHECK(up.el == doctest::Approx(kPi / 2));
}

TEST_CASE("range_of basics and translation invariance") {
  const Frame f;
  CHECK(range_of(f.origin(), f) == 0.0);
  CHECK(range_of({3.0, 4.0, 0.0}, f) == doctest::Approx(5.0));
  const Frame g = Frame::from_euler({10.0, -2.0, 7.0}, 0.3, 0.1, 0.2);
  const Point3 p{4.0, 5.0, -1.0};
  const Point3 shift{100.0, -40.0, 3.0};
  CHECK(range_of(p + shift, g.translated_to(g.origin() + shift)) ==
        doctest::Approx(range_of(p, g)).epsilon(1e-14));
}

TEST_CASE("frames reject non-orthonormal or left-handed axes") {
  Eigen::Matrix3d skew = Eigen::Matrix3d::Identity();
  skew(0, 1) = 1e-6;
  CHECK_THROWS_AS(Frame(Point3::Zero(), skew), ModelError);
  Eigen::Matrix3d mirror = Eigen::Matrix3d::Identity();
  mirror(2, 2) = -1.0;
  CHECK_THROWS_AS(Frame(Point3::Zero(), mirror), ModelError);
  const Frame f = Frame::from_euler(Point3::Zero(), 1.0, 0.4, -0.3);
  CHECK(f.axes().determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("direction_of is inverse-consistent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int t = 0; t < 500; ++t) {
    const Frame f = Frame::from_euler({u(rng), u(rng), u(rng)}, u(rng), u(rng) / 100, u(rng));
    const Point3 p{u(rng), u(rng), u(rng)};
    const Eigen::Vector3d rebuilt =
        f.axes() * (unit_vector(direction_of(p, f)) * range_of(p, f));
    const Eigen::Vector3d truth = p - f.origin();
    CHECK((rebuilt - truth).norm() <= 1e-10 * truth.norm());
  }
}

TEST_CASE("element geometry of single-element arrays reproduces centre values") {
  const auto pattern = ElementPattern::from_beamwidths(deg2rad(120), deg2rad(60));
  const PlacedArray radar{make_ula(1, 0.03, 0.03, 0.06, pattern), Frame()};
  const PlacedArray ris{make_ris_grid(1, 0.03), Frame::from_euler({3.0, 4.0, 1.0}, 2.0)};
  const ElementGrid g = element_geometry(radar, ris);
  REQUIRE(g.ris_count() == 1);
  REQUIRE(g.radar_count() == 1);
  CHECK(g.distance(0, 0) == doctest::Approx(range_of(ris.frame.origin(), radar.frame)));
  const Direction c = direction_of(ris.frame.origin(), radar.frame);
  CHECK(g.ris_az_at_radar(0, 0) == doctest::Approx(c.az));
  CHECK(g.ris_el_at_radar(0, 0) == doctest::Approx(c.el));
  const Direction back = direction_of(radar.frame.origin(), ris.frame);
  CHECK(g.radar_az_at_ris(0, 0) == doctest::Approx(back.az));
  CHECK(g.radar_el_at_ris(0, 0) == doctest::Approx(back.el));
}

TEST_CASE("element geometry rejects coincident elements and has RIS-major shape") {
  const auto pattern = ElementPattern::from_beamwidths(deg2rad(120), deg2rad(60));
  const PlacedArray radar{make_ula(1, 0.03, 0.03, 0.06, pattern), Frame()};
  const PlacedArray ris{make_ris_grid(1, 0.03), Frame()};
  CHECK_THROWS_AS(element_geometry(radar, ris), ModelError);

  const Deployment d = simple_deployment(5.0);
  const GeometrySummary s = summarize_geometry(d, {2000.0, 300.0, 10.0});
  REQUIRE(s.tx.ris);
  REQUIRE(s.rx.ris);
  CHECK(s.tx.ris->elements.distance.rows() == 9);
  CHECK(s.tx.ris->elements.distance.cols() == 3);
  CHECK(s.rx.ris->elements.distance.rows() == 4);
  CHECK(s.rx.ris->elements.distance.cols() == 16);
}

TEST_CASE("element grids permute consistently with element relabelling") {
  const Deployment d = simple_deployment(5.0);
  PlacedArray radar = d.transmitter;
  PlacedArray ris = *d.forward_ris;
  const ElementGrid g = element_geometry(radar, ris);
  std::reverse(radar.spec.positions.begin(), radar.spec.positions.end());
  std::rotate(ris.spec.positions.begin(), ris.spec.positions.begin() + 2, ris.spec.positions.end());
  const ElementGrid h = element_geometry(radar, ris);
  const auto ns = g.ris_count(), nr = g.radar_count();
  for (Eigen::Index n = 0; n < ns; ++n) {
    for (Eigen::Index j = 0; j < nr; ++j) {
      const Eigen::Index n2 = (n + ns - 2) % ns;
      const Eigen::Index j2 = nr - 1 - j;
      CHECK(h.distance(n2, j2) == doctest::Approx(g.distance(n, j)).epsilon(1e-14));
      CHECK(h.radar_az_at_ris(n2, j2) == doctest::Approx(g.radar_az_at_ris(n, j)));
    }
  }
}

TEST_CASE("far-field checks fail for a target at the RIS centre") {
  const Deployment d = simple_deployment(5.0);
  const FarFieldReport r = far_field_checks(d, d.forward_ris->frame.origin());
  CHECK_FALSE(r.check("target-forward-ris").pass);
  CHECK(r.checks.size() == 6);
  CHECK(r.aspect.size() == 2);
}

TEST_CASE("far-field report for a distant target passes the aspect checks") {
  const Deployment d = simple_deployment(5.0);
  const Point3 target{5000.0, 3000.0, 0.0};
  const FarFieldReport r = far_field_checks(d, target);
  for (const auto& a : r.aspect) {
    CHECK(a.applicable);
    CHECK(a.pass);
    // brute-force maximum angle at the target over every element pair
    double worst = 0.0;
    const PlacedArray& radar = a.name == "aspect-transmit" ? d.transmitter : d.receiver;
    const PlacedArray& ris = a.name == "aspect-transmit" ? *d.forward_ris : *d.backward_ris;
    for (const auto& x : radar.element_positions()) {
      for (const auto& y : ris.element_positions()) {
        const Eigen::Vector3d u = (x - target).normalized(), v = (y - target).normalized();
        worst = std::max(worst, std::acos(std::clamp(u.dot(v), -1.0, 1.0)));
      }
    }
    CHECK(a.max_angle == doctest::Approx(worst).epsilon(1e-6));
  }
  CHECK(r.all_pass());
}

TEST_CASE("element-level far-field check is monotone in the radar-RIS distance") {
  bool passed = false;
  for (double dist = 0.05; dist < 20.0; dist *= 1.3) {
    const Deployment d = simple_deployment(dist);
    const bool pass = far_field_checks(d, {4000.0, 100.0, 0.0})
                          .check("transmitter-forward-ris-elements")
                          .pass;
    if (passed) CHECK(pass);
    passed = passed || pass;
  }
  CHECK(passed);
}

TEST_CASE("element-level threshold for the default element sizes") {
  // max{2a^2/l, 2b^2/l, 5a, 5b, 1.6 l} with a = l sqrt(5)/2 and b = l/sqrt(2)
  const double lambda = 0.0599584916;
  const double a = lambda * std::sqrt(1.25), b = lambda * std::sqrt(0.5);
  CHECK(far_field_bound(a, b, lambda) == doctest::Approx(5.0 * a));
  CHECK(5.0 * a == doctest::Approx(0.3351783).epsilon(1e-6));
}

}  // TEST_SUITE
