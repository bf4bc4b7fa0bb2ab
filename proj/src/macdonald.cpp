#include "lqw/macdonald.hpp"

#include <cmath>
#include <numbers>

#include "lqw/detail/ddouble.hpp"
#include "lqw/detail/gauss.hpp"
#include "lqw/errors.hpp"

namespace lqw {

namespace detail {

// K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} H_k (x^2/4)^k / (k!)^2.
double k0_series_small(double x) {
  const double z = 0.25 * x * x;
  double term = 1.0, i0 = 1.0, s = 0.0, h = 0.0;
  for (int k = 1; k <= 60; ++k) {
    term *= z / (static_cast<double>(k) * k);
    h += 1.0 / k;
    i0 += term;
    s += term * h;
    if (term * (h + 1.0) < 1e-18 * i0) break;
  }
  const double pre = -(std::log(0.5 * x) + 0.57721566490153286061);
  return pre * i0 + s;
}

// Same series in double-double. The two halves grow like e^x while the
// result decays like e^{-x}; compensated accumulation keeps ~1e-17 relative
// error after the e^{2x} cancellation for x up to the switch point.
double k0_series_compensated(double x) {
  DD z = dd_mul(two_prod(x, x), 0.25);
  DD term{1.0, 0.0};
  DD i0{1.0, 0.0};
  DD s{0.0, 0.0};
  DD h{0.0, 0.0};
  for (int k = 1; k <= 200; ++k) {
    term = dd_div(dd_mul(term, z), static_cast<double>(k) * k);
    h = dd_add(h, dd_div(DD{1.0, 0.0}, static_cast<double>(k)));
    i0 = dd_add(i0, term);
    s = dd_add(s, dd_mul(term, h));
    if (std::fabs(term.hi) * (h.hi + 1.0) < 1e-34 * i0.hi) break;
  }
  DD pre = dd_neg(dd_add(dd_log(0.5 * x), kGammaE));
  DD k0 = dd_add(dd_mul(pre, i0), s);
  return k0.hi + k0.lo;
}

// K0(x) ~ sqrt(pi/2x) e^{-x} sum_k u_k, u_0 = 1, u_k = -u_{k-1} (2k-1)^2/(8kx).
// Truncated at the smallest term; beyond the switch point that term is below
// 1e-13 relative.
double k0_asymptotic(double x) {
  double u = 1.0, s = 1.0;
  for (int k = 1; k <= 48; ++k) {
    const double f = -((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    const double unew = u * f;
    if (std::fabs(unew) >= std::fabs(u)) break;  // divergence onset
    u = unew;
    s += u;
    if (std::fabs(u) < 1e-18 * std::fabs(s)) break;
  }
  const double pre = std::sqrt(std::numbers::pi / (2.0 * x));
  return pre * std::exp(-x) * s;
}

}  // namespace detail

K0Eval macdonald_k0_eval(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("macdonald_k0: argument must be positive and finite");
  }
  K0Eval r;
  r.x = x;
  if (x <= detail::kK0PlainSeriesMax) {
    r.value = detail::k0_series_small(x);
    r.regime = K0Regime::SeriesSmallX;
  } else if (x <= detail::kK0SeriesMax) {
    r.value = detail::k0_series_compensated(x);
    r.regime = K0Regime::SeriesSmallX;
  } else {
    r.value = detail::k0_asymptotic(x);
    r.regime = K0Regime::AsymptoticLargeX;
    if (r.value == 0.0) r.underflow = true;
  }
  return r;
}

double macdonald_k0(double x) { return macdonald_k0_eval(x).value; }

double macdonald_k0_regular(double x) {
  if (x < 0.0 || !std::isfinite(x)) {
    throw DomainError("macdonald_k0_regular: argument must be nonnegative");
  }
  if (x == 0.0) return 0.0;
  if (x <= 2.0) {
    // R(x) = sum_{k>=1} (x^2/4)^k/(k!)^2 * (H_k - ln(x/2) - gamma);
    // every factor is positive for x < 2, so no cancellation.
    const double z = 0.25 * x * x;
    const double l = -(std::log(0.5 * x) + 0.57721566490153286061);
    double term = 1.0, h = 0.0, acc = 0.0;
    for (int k = 1; k <= 40; ++k) {
      term *= z / (static_cast<double>(k) * k);
      h += 1.0 / k;
      acc += term * (h + l);
      if (term * (h + std::fabs(l) + 1.0) < 1e-18 * (acc + 1e-300)) break;
    }
    return acc;
  }
  return macdonald_k0(x) + std::log(0.5 * x) + 0.57721566490153286061;
}

double k0_panel_integral(double a, double scale) {
  if (!(a >= 0.0) || !(scale > 0.0)) {
    throw DomainError("k0_panel_integral: need a >= 0 and scale > 0");
  }
  if (a == 0.0) return 0.0;
  const double sa = scale * a;
  if (sa <= 2.0) {
    // Termwise: K0(su) = -(ln(su/2)+gamma) I0(su) + sum H_k (su/2)^{2k}/k!^2,
    // with int_0^a u^{2k} ln u du = a^{2k+1} (ln a/(2k+1) - 1/(2k+1)^2).
    const double gamma = 0.57721566490153286061;
    const double lhalf = std::log(0.5 * sa);
    double ak = 1.0;  // (s^2/4)^k / (k!)^2 * a^{2k}
    double h = 0.0;
    double acc = 0.0;
    for (int k = 0; k <= 30; ++k) {
      if (k > 0) {
        ak *= (0.25 * sa * sa) / (static_cast<double>(k) * k);
        h += 1.0 / k;
      }
      const double inv = 1.0 / (2.0 * k + 1.0);
      const double term = ak * a * (inv * (h - gamma - lhalf) + inv * inv);
      acc += term;
      if (k > 2 && std::fabs(term) < 1e-17 * std::fabs(acc)) break;
    }
    return acc;
  }
  // Kernel decays within the panel: graded dyadic panels toward 0 plus the
  // series on the innermost sliver.
  double total = 0.0;
  double hi = a;
  while (scale * hi > 2.0) {
    const double lo = 0.5 * hi;
    total += detail::gauss(detail::kGL16, lo, hi, [scale](double u) {
      return macdonald_k0(scale * u);
    });
    hi = lo;
  }
  return total + k0_panel_integral(hi, scale);
}

double k0_integral_check(double kappa, double c) {
  if (!(kappa > 0.0) || !(c > 0.0)) {
    throw DomainError("k0_integral_check: kappa and c must be positive");
  }
  // Substitute z = kappa*c*t: integral = (2/(kappa*c)) * int_0^inf K0(z) dz.
  // [0, 1]: geometrically graded panels toward the log singularity.
  double inner = 0.0;
  double hi = 1.0;
  for (int j = 0; j < 60; ++j) {
    const double lo = hi * 0.5;
    inner += detail::gauss(detail::kGL16, lo, hi,
                           [](double z) { return macdonald_k0(z); });
    hi = lo;
    if (hi < 1e-18) break;
  }
  // Remaining sliver [0, hi]: K0(z) = -ln(z/2) - gamma + O(z^2 ln z), whose
  // integral has the closed form below (the O-term is ~1e-54 here).
  inner += hi * (1.0 - std::log(0.5 * hi) - 0.57721566490153286061);
  // Smooth decaying tail, truncated where K0 < 1e-25.
  double tail = detail::gauss(detail::kGL32, 1.0, 8.0,
                              [](double z) { return macdonald_k0(z); }) +
                detail::gauss(detail::kGL32, 8.0, 25.0,
                              [](double z) { return macdonald_k0(z); }) +
                detail::gauss(detail::kGL32, 25.0, 60.0,
                              [](double z) { return macdonald_k0(z); });
  return 2.0 * (inner + tail) / (kappa * c);
}

}  // namespace lqw
