// NEON (aarch64) kernel variants. K0 batching stays scalar here; the win on
// NEON is in the dense linear algebra and the pair scan.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <limits>

#include "lqw/macdonald.hpp"
#include "lqw/simd/kernels.hpp"

namespace lqw::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_neon(const double* a, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = dot_neon(a + i * n, x, n);
}

void k0_batch_neon(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = lqw::macdonald_k0(x[i]);
}

PairMinResult pair_ratio_min_neon(const double* xs, const double* ys,
                                  const double* s, std::size_t n, bool wrap,
                                  double period, double eps_floor,
                                  double sep_gate) {
  PairMinResult r;
  const double inf = std::numeric_limits<double>::infinity();
  r.min_ratio_sq = inf;
  r.min_sep_chord_sq = inf;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const float64x2_t vxi = vdupq_n_f64(xs[i]);
    const float64x2_t vyi = vdupq_n_f64(ys[i]);
    const float64x2_t vsi = vdupq_n_f64(s[i]);
    std::size_t j = i + 1;
    for (; j + 2 <= n; j += 2) {
      float64x2_t dx = vsubq_f64(vld1q_f64(xs + j), vxi);
      float64x2_t dy = vsubq_f64(vld1q_f64(ys + j), vyi);
      float64x2_t chord2 = vfmaq_f64(vmulq_f64(dy, dy), dx, dx);
      float64x2_t geo = vabsq_f64(vsubq_f64(vld1q_f64(s + j), vsi));
      if (wrap) geo = vminq_f64(geo, vsubq_f64(vdupq_n_f64(period), geo));
      double c2[2], g[2];
      vst1q_f64(c2, chord2);
      vst1q_f64(g, geo);
      for (int l = 0; l < 2; ++l) {
        if (g[l] >= eps_floor) {
          r.any_pair = true;
          const double ratio2 = c2[l] / (g[l] * g[l]);
          if (ratio2 < r.min_ratio_sq) {
            r.min_ratio_sq = ratio2;
            r.arg_i = static_cast<std::uint32_t>(i);
            r.arg_j = static_cast<std::uint32_t>(j + l);
          }
        }
        if (g[l] > sep_gate && c2[l] < r.min_sep_chord_sq) {
          r.min_sep_chord_sq = c2[l];
          r.sep_i = static_cast<std::uint32_t>(i);
          r.sep_j = static_cast<std::uint32_t>(j + l);
        }
      }
    }
    for (; j < n; ++j) {
      const double dx = xs[j] - xs[i];
      const double dy = ys[j] - ys[i];
      const double chord2 = dx * dx + dy * dy;
      double geo = std::fabs(s[j] - s[i]);
      if (wrap) geo = std::min(geo, period - geo);
      if (geo >= eps_floor) {
        r.any_pair = true;
        const double ratio2 = chord2 / (geo * geo);
        if (ratio2 < r.min_ratio_sq) {
          r.min_ratio_sq = ratio2;
          r.arg_i = static_cast<std::uint32_t>(i);
          r.arg_j = static_cast<std::uint32_t>(j);
        }
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

const Kernels* neon_kernels() {
  static const Kernels k = {"neon",        dot_neon,      axpy_neon,
                            matvec_neon,   k0_batch_neon, pair_ratio_min_neon};
  return &k;
}

}  // namespace lqw::simd

#else

#include "lqw/simd/kernels.hpp"

namespace lqw::simd {
const Kernels* neon_kernels() { return nullptr; }
}  // namespace lqw::simd

#endif
