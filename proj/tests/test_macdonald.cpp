#include <doctest.h>

#include <cmath>
#include <random>

#include "lqw/errors.hpp"
#include "lqw/macdonald.hpp"
#include "support/series_oracle.hpp"

using namespace lqw;

namespace {
// mpmath reference values, 22 digits.
struct Ref {
  double x;
  double k0;
};
const Ref kRefs[] = {
    {1e-8, 18.53661225961077840937},
    {1e-6, 13.93144207362641941344},
    {1e-4, 9.326271913450274920885},
    {0.01, 4.721244730161094965136},
    {0.1, 2.427069024702016612519},
    {0.5, 0.9244190712276658617819},
    {1.0, 0.4210244382407083333356},
    {2.0, 0.1138938727495334356527},
    {2.5, 0.06234755320036618602917},
    {3.7, 0.01563065992162666161219},
    {5.0, 0.003691098334042594274735},
    {8.0, 0.0001464707052228153870966},
    {10.0, 1.77800623161676518113e-5},
    {13.0, 7.784543861420496320822e-7},
    {16.0, 3.499411663936498936046e-8},
    {17.0, 1.249466402631773191096e-8},
    {17.5, 7.470835177068448459419e-9},
    {20.0, 5.741237815336524292717e-10},
    {50.0, 3.410167749789495513921e-23},
    {100.0, 4.656628229175902018939e-45},
    {300.0, 3.723694854889143263252e-132},
    {700.0, 4.669776431685376880986e-306},
};
}  // namespace

TEST_CASE("macdonald_k0 hits reference values to 1e-12 relative") {
  for (const Ref& r : kRefs) {
    const double v = macdonald_k0(r.x);
    CHECK(std::fabs(v - r.k0) <= 1.5e-12 * r.k0);
  }
}

TEST_CASE("macdonald_k0 agrees with the independent series oracle") {
  // x = 1 from the oracle, frozen.
  const double oracle1 = lqw_test::k0_series_oracle(1.0);
  CHECK(std::fabs(oracle1 - 0.421024438240708) <= 1e-14);
  CHECK(std::fabs(macdonald_k0(1.0) - oracle1) <= 1e-13);
  for (double x : {0.05, 0.3, 0.7, 1.3, 1.9, 2.4}) {
    CHECK(std::fabs(macdonald_k0(x) - lqw_test::k0_series_oracle(x)) <=
          1e-13 * macdonald_k0(x));
  }
}

TEST_CASE("small-x limit: K0(x) + ln(x/2) + gamma -> 0 at rate x^2 ln x") {
  const double gamma = 0.57721566490153286061;
  double prev = 1.0;
  for (double x : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double rem = macdonald_k0(x) + std::log(0.5 * x) + gamma;
    CHECK(rem >= 0.0);
    CHECK(rem <= 0.5 * x * x * (std::fabs(std::log(x)) + 1.0));
    CHECK(rem < prev);
    prev = rem;
  }
}

TEST_CASE("large-x behaviour and underflow flag") {
  const K0Eval e700 = macdonald_k0_eval(700.0);
  CHECK(e700.value > 0.0);
  CHECK(e700.value < 1e-300);
  CHECK(!e700.underflow);
  const K0Eval e800 = macdonald_k0_eval(800.0);
  CHECK(e800.value == 0.0);
  CHECK(e800.underflow);
  CHECK(e800.regime == K0Regime::AsymptoticLargeX);
  CHECK(macdonald_k0_eval(1.0).regime == K0Regime::SeriesSmallX);
}

TEST_CASE("monotone decrease and positivity (random pairs)") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-6.0, 2.5);
  for (int i = 0; i < 300; ++i) {
    double x1 = std::pow(10.0, u(rng));
    double x2 = std::pow(10.0, u(rng));
    if (x1 == x2) continue;
    if (x1 > x2) std::swap(x1, x2);
    const double v1 = macdonald_k0(x1);
    const double v2 = macdonald_k0(x2);
    CHECK(v1 > 0.0);
    CHECK(v2 > 0.0);
    CHECK(v1 > v2);
  }
}

TEST_CASE("regime continuity at the series/asymptotic switch") {
  const double xs = detail::kK0SeriesMax;
  const double a = detail::k0_series_compensated(xs);
  const double b = detail::k0_asymptotic(xs);
  CHECK(std::fabs(a - b) <= 1e-11 * std::fabs(a));
  // Plain/compensated series seam.
  const double c1 = detail::k0_series_small(detail::kK0PlainSeriesMax);
  const double c2 = detail::k0_series_compensated(detail::kK0PlainSeriesMax);
  CHECK(std::fabs(c1 - c2) <= 1e-12 * std::fabs(c1));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(macdonald_k0(0.0), DomainError);
  CHECK_THROWS_AS(macdonald_k0(-1.0), DomainError);
  CHECK_THROWS_AS(macdonald_k0(std::numeric_limits<double>::infinity()),
                  DomainError);
  CHECK_THROWS_AS(macdonald_k0(std::numeric_limits<double>::quiet_NaN()),
                  DomainError);
  CHECK_THROWS_AS(k0_integral_check(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(macdonald_k0_regular(-0.5), DomainError);
}

TEST_CASE("regular part R(x) = K0 + ln(x/2) + gamma") {
  CHECK(macdonald_k0_regular(0.0) == 0.0);
  const double gamma = 0.57721566490153286061;
  for (double x : {1e-4, 0.1, 0.9, 1.7, 2.0, 3.0, 6.0}) {
    // The reference below cancels K0 against its own log part, so it is only
    // good to absolute ~eps * K0(x).
    const double direct = macdonald_k0(x) + std::log(0.5 * x) + gamma;
    CHECK(std::fabs(macdonald_k0_regular(x) - direct) <=
          1e-12 * std::fabs(direct) + 4.0 * std::numeric_limits<double>::epsilon() *
                                          macdonald_k0(x));
  }
}

TEST_CASE("integral identity int K0(kappa c |t|) dt = pi/(kappa c)") {
  const double pi = 3.14159265358979323846;
  CHECK(std::fabs(k0_integral_check(1.0, 1.0) - pi) <= 1e-8);
  CHECK(std::fabs(k0_integral_check(2.0, 0.5) - pi) <= 1e-8);
  CHECK(std::fabs(k0_integral_check(10.0, 1.0) - pi / 10.0) <= 1e-9);
  // kappa*c invariance
  CHECK(std::fabs(k0_integral_check(4.0, 0.25) - k0_integral_check(1.0, 1.0)) <=
        1e-10);
}
