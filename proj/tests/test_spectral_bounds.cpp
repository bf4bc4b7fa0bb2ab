#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lqw/errors.hpp"
#include "lqw/spectral_bounds.hpp"

using namespace lqw;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("single_bound closed forms") {
  CHECK(single_bound(1.0, 1.0) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(single_bound(1.0, std::sin(kPi / 4.0)) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(single_bound(2.0, 2.0 / kPi) ==
        doctest::Approx(-kPi * kPi / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS(single_bound(1.0, 0.0), BoundUndefinedError);
  CHECK_THROWS_AS(single_bound(1.0, -0.3), BoundUndefinedError);
  CHECK_THROWS_AS(single_bound(-1.0, 0.5), DomainError);
}

TEST_CASE("composite_bound: angle, degenerate single, three pieces") {
  CHECK(composite_bound(1.0, {1.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(composite_bound(1.0, {1.0, 1.0, 1.0}) ==
        doctest::Approx(-2.25).epsilon(1e-15));
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double alpha = u(rng), c = u(rng);
    CHECK(composite_bound(alpha, {c}) ==
          doctest::Approx(single_bound(alpha, c)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(composite_bound(1.0, {}), BoundUndefinedError);
  CHECK_THROWS_AS(composite_bound(1.0, {0.5, 0.0}), BoundUndefinedError);
}

TEST_CASE("composite_bound monotonicity in pieces") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (int i = 0; i < 50; ++i) {
    const double alpha = u(rng);
    std::vector<double> cs = {u(rng), u(rng), u(rng)};
    const double base = composite_bound(alpha, cs);
    // shrinking any c_i strictly worsens (lowers) the bound
    for (std::size_t j = 0; j < cs.size(); ++j) {
      auto worse = cs;
      worse[j] *= 0.8;
      CHECK(composite_bound(alpha, worse) < base);
    }
    // adding a piece strictly worsens the bound
    auto more = cs;
    more.push_back(u(rng));
    CHECK(composite_bound(alpha, more) < base);
  }
}

TEST_CASE("single_bound scales as alpha^2") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.2, 2.5);
  for (int i = 0; i < 50; ++i) {
    const double alpha = u(rng), c = u(rng), t = u(rng);
    CHECK(single_bound(t * alpha, c) ==
          doctest::Approx(t * t * single_bound(alpha, c)).epsilon(1e-12));
  }
}

TEST_CASE("essential spectrum thresholds") {
  CHECK(essential_spectrum(CurveKind::Loop, 3.0, true).threshold == 0.0);
  CHECK(essential_spectrum(CurveKind::Segment, 1.0, true).threshold == 0.0);
  const auto inf_ok = essential_spectrum(CurveKind::Infinite, 1.0, true);
  CHECK(inf_ok.threshold == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(!inf_ok.diagnostic_only);
  const auto inf_bad = essential_spectrum(CurveKind::Infinite, 1.0, false);
  CHECK(inf_bad.threshold == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(inf_bad.diagnostic_only);
}

TEST_CASE("graph bound: single straight edge gives -alpha^2/4") {
  LeakyGraph g;
  g.vertices = {{0, 0}, {3, 0}};
  g.edges = {{0, 1, {}}};
  SolverSettings st;
  st.find_states = false;
  const SpectralReport rep = graph_bound(g, 1.0, st);
  CHECK(rep.bound == -0.25);
  CHECK(rep.bound_kind == "graph");
  REQUIRE(rep.pieces.size() == 1);
  CHECK(rep.pieces[0].c == 1.0);
}

TEST_CASE("graph bound: 3-edge star at 120 degrees gives -9 alpha^2/4 exactly") {
  LeakyGraph g;
  g.vertices = {{0, 0},
                {1, 0},
                {std::cos(2 * kPi / 3), std::sin(2 * kPi / 3)},
                {std::cos(4 * kPi / 3), std::sin(4 * kPi / 3)}};
  g.edges = {{0, 1, {}}, {0, 2, {}}, {0, 3, {}}};
  SolverSettings st;
  st.find_states = false;
  const SpectralReport rep = graph_bound(g, 1.0, st);
  CHECK(rep.bound == -2.25);
  const SpectralReport rep2 = graph_bound(g, 2.0, st);
  CHECK(rep2.bound == -9.0);
}

TEST_CASE("graph edges crossing away from endpoints are rejected") {
  LeakyGraph g;
  g.vertices = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
  g.edges = {{0, 1, {}}, {2, 3, {}}};  // cross at (1,1)
  CHECK_THROWS_AS(graph_edge_curves(g, 64), DomainError);
}

TEST_CASE("verify_report on the circle: states within the theorem bound") {
  SolverSettings st;
  st.n = 256;
  const SpectralReport rep = verify_report(curves::circle(1.0, 256), 1.0, st);
  CHECK(rep.bound_kind == "single");
  CHECK(rep.bound == doctest::Approx(-kPi * kPi / 16.0).epsilon(1e-6));
  CHECK(rep.ess_threshold == 0.0);
  REQUIRE(!rep.states.empty());
  CHECK(rep.all_pass);
  for (std::size_t i = 0; i < rep.states.size(); ++i) {
    CHECK(rep.states[i].lambda >= rep.bound - 1e-6);
    CHECK(rep.states[i].lambda < 0.0);
    CHECK(rep.verdicts[i]);
  }
}

TEST_CASE("verify_report on the line: no states below the essential spectrum") {
  SolverSettings st;
  st.n = 600;
  const SpectralReport rep = verify_report(curves::line(25.0, 128), 1.0, st);
  CHECK(rep.bound == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(rep.ess_threshold == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(rep.states.empty());
  CHECK(rep.all_pass);
  CHECK(!rep.ess_diagnostic_only);  // straight line is trivially (a2)
}

TEST_CASE("verify_report on the pi/3 angle: both routes give -1") {
  SolverSettings st;
  st.n = 256;
  const Curve a = curves::angle(kPi / 3.0, 25.0, 128);
  const SpectralReport rep = verify_report(a, 1.0, st);
  REQUIRE(rep.direct_bound.has_value());
  REQUIRE(rep.composite_bound_value.has_value());
  CHECK(*rep.direct_bound == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(*rep.composite_bound_value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(rep.bound == doctest::Approx(-1.0).epsilon(1e-6));
  // ground state strictly between the bound and the essential spectrum
  REQUIRE(!rep.states.empty());
  const double l0 = rep.states.front().lambda;
  CHECK(l0 >= -1.0 - 1e-6);
  CHECK(l0 < -0.25);
  CHECK(rep.all_pass);
}

TEST_CASE("verify_report on the spinode uses the composite route") {
  SolverSettings st;
  st.n = 128;
  st.find_states = false;
  const SpectralReport rep = verify_report(curves::spinode(1.0, 128), 1.0, st);
  CHECK(!rep.direct_bound.has_value());
  REQUIRE(rep.composite_bound_value.has_value());
  CHECK(rep.bound_kind == "composite");
  CHECK(rep.bound < 0.0);
  CHECK(std::isfinite(rep.bound));
  REQUIRE(rep.pieces.size() == 2);
  for (const auto& p : rep.pieces) CHECK(p.c > 0.05);
}

TEST_CASE("verify_report rejects self-intersecting curves") {
  const Curve c = curves::polyline(
      {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, -1}}, 96);
  SolverSettings st;
  st.grid_m = 96;
  st.find_states = false;
  CHECK_THROWS_AS(verify_report(c, 1.0, st), BoundUndefinedError);
}
