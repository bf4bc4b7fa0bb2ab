#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lqw/curve.hpp"
#include "lqw/errors.hpp"

using namespace lqw;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("circle resamples at uniform arc spacing 2*pi/n") {
  const Curve c = curves::circle(1.0, 100);
  CHECK(c.kind() == CurveKind::Loop);
  CHECK(std::fabs(c.length() - 2.0 * kPi) <= 1e-12 * 2.0 * kPi);
  const auto& s = c.sample_params();
  REQUIRE(s.size() == 101);
  const double h = 2.0 * kPi / 100.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(std::fabs((s[i] - s[i - 1]) - h) <= 1e-10 * h);
  }
  // loop closes
  const auto& p = c.sample_points();
  CHECK((p.front() - p.back()).norm() <= 1e-12);
}

TEST_CASE("unit-speed property holds on the sample grid") {
  for (const Curve& c : {curves::circle(2.0, 64), curves::spinode(1.0, 64),
                         curves::angle(kPi / 3, 10.0, 64)}) {
    const double L = c.length();
    const double d = 1e-7 * L;
    for (double frac : {0.13, 0.37, 0.52, 0.81}) {
      const double s = frac * L;
      const double speed =
          (c.point_at(s + d) - c.point_at(s - d)).norm() / (2.0 * d);
      CHECK(std::fabs(speed - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("spinode arc length matches the closed form") {
  // 2 * (8/27) ((1 + 9/4)^{3/2} - 1)
  const double expected = 2.8794197467431008;
  const Curve c = curves::spinode(1.0, 200);
  CHECK(std::fabs(c.length() - expected) <= 1e-10 * expected);
}

TEST_CASE("polyline resampling: total length 2, spacing 0.25") {
  const Curve c = curves::polyline({{0, 0}, {1, 0}, {1, 1}}, 8);
  CHECK(c.kind() == CurveKind::Segment);
  CHECK(c.length() == doctest::Approx(2.0).epsilon(1e-14));
  const auto& s = c.sample_params();
  REQUIRE(s.size() == 9);
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(std::fabs((s[i] - s[i - 1]) - 0.25) <= 1e-14);
  }
  // corner is preserved
  const Vec2 mid = c.point_at(1.0);
  CHECK(std::fabs(mid.x - 1.0) <= 1e-12);
  CHECK(std::fabs(mid.y - 0.0) <= 1e-12);
}

TEST_CASE("non-rectifiable source fails with a degenerate-curve error") {
  CurveSource s;
  s.eval = [](double t) {
    return t == 0.0 ? Vec2{0.0, 0.0} : Vec2{t, t * std::sin(1.0 / t)};
  };
  s.t0 = 0.0;
  s.t1 = 0.5;
  s.name = "oscillator";
  CHECK_THROWS_AS(curves::from_source(std::move(s), CurveKind::Segment, 32),
                  DegenerateCurveError);
}

TEST_CASE("node count below 8 is rejected") {
  CHECK_THROWS_AS(curves::circle(1.0, 4), DomainError);
}

TEST_CASE("geodesic distance: wrap, segment, domain errors") {
  const double R = 10.0 / (2.0 * kPi);
  const Curve loop = curves::circle(R, 64);  // L = 10
  CHECK(geodesic_distance(loop, 1.0, 9.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(geodesic_distance(loop, 2.0, 7.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(geodesic_distance(loop, 1.0, 9.0) ==
        geodesic_distance(loop, 9.0, 1.0));

  const Curve seg = curves::polyline({{0, 0}, {1, 0}}, 16);
  CHECK(geodesic_distance(seg, 0.3, 0.7) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(geodesic_distance(seg, -0.5, 0.7), DomainError);
  CHECK_THROWS_AS(geodesic_distance(seg, 0.0, 1.5), DomainError);
}

TEST_CASE("geodesic distance is a metric on loop sample sets (n <= 64)") {
  const Curve loop = curves::circle(1.5, 48);
  const auto& s = loop.sample_params();
  const int n = 48;
  for (int a = 0; a < n; a += 3) {
    for (int b = 0; b < n; b += 3) {
      CHECK(loop.geodesic(s[a], s[b]) == loop.geodesic(s[b], s[a]));
      for (int c = 0; c < n; c += 3) {
        CHECK(loop.geodesic(s[a], s[c]) <=
              loop.geodesic(s[a], s[b]) + loop.geodesic(s[b], s[c]) + 1e-14);
      }
    }
  }
}

TEST_CASE("chord never exceeds arc distance on sampled node pairs") {
  // Exact assertion (squared comparison) on curves whose samples allow it.
  auto check_pairs = [](const Curve& c, double slack) {
    const auto& s = c.sample_params();
    const auto& p = c.sample_points();
    for (std::size_t i = 0; i < s.size(); i += 2) {
      for (std::size_t j = i + 1; j < s.size(); j += 3) {
        const double dx = p[j].x - p[i].x;
        const double dy = p[j].y - p[i].y;
        const double chord2 = dx * dx + dy * dy;
        const double geo = c.geodesic(s[i], s[j]);
        CHECK(chord2 <= geo * geo * (1.0 + slack));
      }
    }
  };
  check_pairs(curves::line(100.0, 128), 0.0);
  check_pairs(curves::circle(1.0, 128), 0.0);
  check_pairs(curves::spinode(1.0, 128), 0.0);
  check_pairs(curves::polyline({{0, 0}, {1, 0}, {1, 1}, {2, 1}}, 64), 0.0);
  // Ray coordinates round at scale |s| >> |ds|, so same-ray chords can
  // overshoot the arc by ~eps * s / ds relative.
  check_pairs(curves::angle(2.0 * kPi / 3.0, 50.0, 128), 1e-12);
}

TEST_CASE("sampled curve interpolates linearly in its own parameter") {
  const Curve c =
      curves::sampled({0.0, 1.0, 2.0}, {{0, 0}, {2, 0}, {2, 2}}, 32);
  CHECK(c.length() == doctest::Approx(4.0).epsilon(1e-14));
  const Vec2 q = c.point_at(1.0);  // halfway along the first chord
  CHECK(q.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(q.y) <= 1e-12);
  CHECK_THROWS_AS(curves::sampled({0.0, 0.0}, {{0, 0}, {1, 0}}, 16),
                  DomainError);
}

TEST_CASE("arc_length_reparametrize changes the sample count") {
  const Curve c = curves::circle(1.0, 100);
  const Curve c2 = arc_length_reparametrize(c, 64);
  CHECK(c2.sample_params().size() == 65);
  CHECK(std::fabs(c2.length() - c.length()) <= 1e-12);
}

TEST_CASE("straightness deficit: line zero, angle straddle, cusp decay") {
  const Curve l = curves::line(50.0, 64);
  CHECK(straightness_deficit(l, 10.0, 80.0) == 0.0);

  const double beta = kPi / 3.0;
  const Curve a = curves::angle(beta, 50.0, 64);
  const double T = 50.0;
  // pair straddling the vertex symmetrically: 1 - sin(beta/2)
  const double d = straightness_deficit(a, T - 7.0, T + 7.0);
  CHECK(std::fabs(d - (1.0 - std::sin(0.5 * beta))) <= 1e-12);
  CHECK_THROWS_AS(straightness_deficit(a, 3.0, 3.0), DomainError);

  // branch of a cusp curve straightens with growing arc position
  const Curve sp = curves::cusp_family(1, 1, 30.0, 256);
  const double L = sp.length();
  const double mid = 0.5 * L;
  double prev = 1.0;
  for (double frac : {0.05, 0.12, 0.25, 0.45}) {
    const double s = mid + frac * (L - mid);
    const double def = straightness_deficit(sp, s, mid + 1.01 * (s - mid));
    CHECK(def < prev);
    prev = def;
  }
}

TEST_CASE("fit_a2: cusp branch decays with mu > 1/2, straight line trivial") {
  const Curve sp = curves::cusp_family(1, 1, 40.0, 256);
  const A2Fit fit = fit_a2(sp);
  CHECK(fit.consistent);
  CHECK(fit.mu > 0.5);
  CHECK(fit.mu < 1.2);

  const A2Fit lf = fit_a2(curves::line(50.0, 64));
  CHECK(lf.straight);
  CHECK(lf.consistent);

  // loop curvature never decays: inconsistent with the decay model
  const A2Fit cf = fit_a2(curves::circle(1.0, 128));
  CHECK(!cf.consistent);
  CHECK_THROWS_AS(fit_a2(sp, 1.5), DomainError);
}

TEST_CASE("detect_cusps: builtin families, regular curves, fake stationary") {
  const auto sp = detect_cusps(curves::spinode(1.0, 64));
  REQUIRE(sp.size() == 1);
  CHECK(sp[0] == 0.0);

  const auto rh = detect_cusps(curves::rhamphoid(1.0, 64));
  REQUIRE(rh.size() == 1);
  CHECK(rh[0] == 0.0);

  CHECK(detect_cusps(curves::circle(1.0, 64)).empty());
  CHECK(detect_cusps(curves::line(10.0, 64)).empty());

  // gamma(t) = (t^3, 0): stationary parametrization of a straight line;
  // velocity vanishes but the chord/arc ratio stays 1 -> not a cusp.
  CurveSource s;
  s.eval = [](double t) { return Vec2{t * t * t, 0.0}; };
  s.deriv = [](double t) { return Vec2{3.0 * t * t, 0.0}; };
  s.t0 = -1.0;
  s.t1 = 1.0;
  s.breakpoints = {0.0};
  s.name = "cubic-line";
  const Curve fake = curves::from_source(std::move(s), CurveKind::Segment, 64);
  CHECK(detect_cusps(fake).empty());
}

TEST_CASE("restrict_source wraps around loops") {
  const Curve c = curves::circle(1.0, 128);
  const double t1 = 1.5 * kPi, t2 = 2.25 * kPi;  // wraps past 2*pi
  const Curve piece = c.restrict_source(t1, t2, 64);
  CHECK(piece.kind() == CurveKind::Segment);
  CHECK(std::fabs(piece.length() - 0.75 * kPi) <= 1e-9);
}
