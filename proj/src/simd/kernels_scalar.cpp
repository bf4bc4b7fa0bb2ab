#include <cmath>
#include <limits>

#include "lqw/macdonald.hpp"
#include "lqw/simd/kernels.hpp"

namespace lqw::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
    acc2 += a[i + 2] * b[i + 2];
    acc3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) acc0 += a[i] * b[i];
  return (acc0 + acc1) + (acc2 + acc3);
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_scalar(const double* a, std::size_t n, const double* x,
                   double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = dot_scalar(a + i * n, x, n);
  }
}

void k0_batch_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = lqw::macdonald_k0(x[i]);
}

PairMinResult pair_ratio_min_scalar(const double* xs, const double* ys,
                                    const double* s, std::size_t n, bool wrap,
                                    double period, double eps_floor,
                                    double sep_gate) {
  PairMinResult r;
  r.min_ratio_sq = std::numeric_limits<double>::infinity();
  r.min_sep_chord_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = xs[i], yi = ys[i], si = s[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xs[j] - xi;
      const double dy = ys[j] - yi;
      const double chord2 = dx * dx + dy * dy;
      double geo = std::fabs(s[j] - si);
      if (wrap) geo = std::min(geo, period - geo);
      if (geo >= eps_floor) {
        const double ratio2 = chord2 / (geo * geo);
        if (ratio2 < r.min_ratio_sq) {
          r.min_ratio_sq = ratio2;
          r.arg_i = static_cast<std::uint32_t>(i);
          r.arg_j = static_cast<std::uint32_t>(j);
        }
        r.any_pair = true;
      }
      if (geo > sep_gate && chord2 < r.min_sep_chord_sq) {
        r.min_sep_chord_sq = chord2;
        r.sep_i = static_cast<std::uint32_t>(i);
        r.sep_j = static_cast<std::uint32_t>(j);
      }
    }
  }
  return r;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {"scalar",       dot_scalar,      axpy_scalar,
                            matvec_scalar,  k0_batch_scalar, pair_ratio_min_scalar};
  return k;
}

}  // namespace lqw::simd
