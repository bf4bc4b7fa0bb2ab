#pragma once

// Macdonald function K0 (modified Bessel function of the second kind, order
// zero) and the integral identity int K0(kappa*c*|t|) dt = pi/(kappa*c).
//
// Accuracy contract: relative error <= 1e-12 on [1e-8, 700]. The operator
// discretization downstream is the accuracy bottleneck, never K0 itself.

namespace lqw {

enum class K0Regime { SeriesSmallX, AsymptoticLargeX };

struct K0Eval {
  double x = 0.0;
  double value = 0.0;
  K0Regime regime = K0Regime::SeriesSmallX;
  bool underflow = false;  // value rounded to zero at working precision
};

// K0(x) for x > 0. Throws DomainError for x <= 0 or non-finite x.
double macdonald_k0(double x);

// Same, with regime tag and underflow flag.
K0Eval macdonald_k0_eval(double x);

// Regular part R(x) = K0(x) + ln(x/2) + gamma_E, smooth through x = 0 with
// R(0) = 0. This is what log-subtracted panel quadrature integrates.
double macdonald_k0_regular(double x);

// Numerically integrates int_{-inf}^{inf} K0(kappa*c*|t|) dt by log-graded
// panels near zero and an exponentially truncated smooth tail. The closed
// form is pi/(kappa*c); the difference is a self-test residual.
double k0_integral_check(double kappa, double c);

// int_0^a K0(scale * u) du with the logarithmic singularity at u = 0
// integrated termwise (series in scale*a for small arguments, graded
// quadrature otherwise). Used for the singular diagonal panels.
double k0_panel_integral(double a, double scale);

namespace detail {
// Regime internals, exposed for the cross-regime continuity test.
double k0_series_small(double x);      // plain double series
double k0_series_compensated(double x);  // double-double series, x <= 17
double k0_asymptotic(double x);        // scaled asymptotic expansion, x > 17
// The plain series cancels ~e^{2x}; at 3.5 that costs ~4e-13 relative,
// still inside the 1e-12 contract. Beyond it the compensated series takes
// over until the asymptotic regime.
inline constexpr double kK0PlainSeriesMax = 3.5;
inline constexpr double kK0SeriesMax = 17.0;  // series/asymptotic switch point
}  // namespace detail

}  // namespace lqw
