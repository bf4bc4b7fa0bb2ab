#pragma once

#include <cmath>

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms with
// FMA products). Used only where a plain double series cancels catastrophically:
// the Macdonald-function series in the mid-range 2.5 < x <= 17 loses up to
// e^{2x} of relative precision, which double-double absorbs comfortably.
namespace lqw::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline DD dd_div(DD a, double b) { return dd_div(a, DD{b, 0.0}); }

// Euler-Mascheroni constant and ln 2 split to ~32 digits.
inline constexpr DD kGammaE{0.5772156649015329, -4.942915152430645e-18};
inline constexpr DD kLn2{0.6931471805599453, 2.3190468138462996e-17};

// ln(x) for a positive double, accurate to ~1e-31 relative.
// Reduction x = m * 2^e with m in [1/sqrt(2), sqrt(2)), then the atanh series
// ln m = 2 * (t + t^3/3 + ...) with t = (m-1)/(m+1), |t| <= 0.1716.
inline DD dd_log(double x) {
  int e = 0;
  double m = std::frexp(x, &e);  // m in [0.5, 1)
  if (m < 0.70710678118654752440) {
    m *= 2.0;
    e -= 1;
  }
  DD num = two_sum(m, -1.0);
  DD den = two_sum(m, 1.0);
  DD t = dd_div(num, den);
  DD t2 = dd_mul(t, t);
  DD sum = t;
  DD term = t;
  for (int k = 3; k <= 51; k += 2) {
    term = dd_mul(term, t2);
    sum = dd_add(sum, dd_div(term, static_cast<double>(k)));
    if (std::fabs(term.hi) < 1e-35 * (std::fabs(sum.hi) + 1e-300)) break;
  }
  DD lnm = dd_mul(sum, 2.0);
  return dd_add(lnm, dd_mul(kLn2, static_cast<double>(e)));
}

}  // namespace lqw::detail
