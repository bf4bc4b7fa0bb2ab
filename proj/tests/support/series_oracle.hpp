#pragma once

#include <cmath>

// Independent small-argument oracle for K0: twenty explicit terms of
//   K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} H_k (x^2/4)^k / (k!)^2.
// Kept deliberately separate from the library implementation.
namespace lqw_test {

inline double k0_series_oracle(double x) {
  const double gamma = 0.57721566490153286061;
  const double z = 0.25 * x * x;
  double term = 1.0, i0 = 1.0, s = 0.0, h = 0.0;
  for (int k = 1; k <= 20; ++k) {
    term *= z / (static_cast<double>(k) * k);
    h += 1.0 / k;
    i0 += term;
    s += term * h;
  }
  return -(std::log(0.5 * x) + gamma) * i0 + s;
}

}  // namespace lqw_test
