// AVX2+FMA kernel variants. Built unconditionally on x86-64 via function
// target attributes; dispatch.cpp only hands them out when the CPU agrees.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "lqw/macdonald.hpp"
#include "lqw/simd/kernels.hpp"

#define LQW_AVX2 __attribute__((target("avx2,fma")))

namespace lqw::simd {
namespace {

LQW_AVX2 inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// exp(x) for |x| <= 745, subnormal-safe through split 2^k scaling.
LQW_AVX2 inline __m256d exp_pd(__m256d x) {
  const __m256d inv_ln2 = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, inv_ln2),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);
  // Taylor polynomial for e^r on |r| <= ln2/2.
  static const double c[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
      1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
      1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
      1.0 / 24.0,         1.0 / 6.0,         0.5,
      1.0,                1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 14; ++i) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));
  }
  // 2^k = 2^k1 * 2^k2 with k1 = floor(k/2): both halves stay in normal range.
  __m128i ki = _mm256_cvtpd_epi32(k);
  __m128i k1 = _mm_srai_epi32(ki, 1);
  __m128i k2 = _mm_sub_epi32(ki, k1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(
      _mm256_add_epi64(_mm256_cvtepi32_epi64(k1), bias), 52));
  __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(
      _mm256_add_epi64(_mm256_cvtepi32_epi64(k2), bias), 52));
  return _mm256_mul_pd(_mm256_mul_pd(p, s1), s2);
}

// ln(x) for positive normal x.
LQW_AVX2 inline __m256d log_pd(__m256d x) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000ll);
  __m256i bits = _mm256_castpd_si256(x);
  __m256i expfield = _mm256_srli_epi64(bits, 52);
  // int64 -> double for 0 <= e < 2^31 via the 2^52 bias trick.
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(
          expfield, _mm256_set1_epi64x(0x4330000000000000ll))),
      _mm256_set1_pd(4503599627370496.0));
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  __m256d big =
      _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d t2 = _mm256_mul_pd(t, t);
  static const double c[] = {1.0 / 19.0, 1.0 / 17.0, 1.0 / 15.0, 1.0 / 13.0,
                             1.0 / 11.0, 1.0 / 9.0,  1.0 / 7.0,  1.0 / 5.0,
                             1.0 / 3.0};
  __m256d q = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 9; ++i) {
    q = _mm256_fmadd_pd(q, t2, _mm256_set1_pd(c[i]));
  }
  // ln m = 2t + 2t * t^2 * q
  __m256d twot = _mm256_add_pd(t, t);
  __m256d lnm = _mm256_fmadd_pd(_mm256_mul_pd(twot, t2), q, twot);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  __m256d res = _mm256_fmadd_pd(e, ln2_lo, lnm);
  return _mm256_fmadd_pd(e, ln2_hi, res);
}

// Small-argument series lanes (x <= 2.5).
LQW_AVX2 inline __m256d k0_series_pd(__m256d x) {
  const __m256d z = _mm256_mul_pd(_mm256_mul_pd(x, x), _mm256_set1_pd(0.25));
  __m256d term = _mm256_set1_pd(1.0);
  __m256d i0 = _mm256_set1_pd(1.0);
  __m256d s = _mm256_setzero_pd();
  double h = 0.0;
  for (int k = 1; k <= 28; ++k) {
    term = _mm256_mul_pd(term,
                         _mm256_div_pd(z, _mm256_set1_pd(double(k) * k)));
    h += 1.0 / k;
    i0 = _mm256_add_pd(i0, term);
    s = _mm256_fmadd_pd(term, _mm256_set1_pd(h), s);
  }
  const __m256d gamma = _mm256_set1_pd(0.57721566490153286061);
  __m256d pre = _mm256_add_pd(log_pd(_mm256_mul_pd(x, _mm256_set1_pd(0.5))),
                              gamma);
  pre = _mm256_sub_pd(_mm256_setzero_pd(), pre);
  return _mm256_fmadd_pd(pre, i0, s);
}

// Scaled asymptotic lanes (x > 17), per-lane optimal truncation via masks.
LQW_AVX2 inline __m256d k0_asym_pd(__m256d x) {
  __m256d u = _mm256_set1_pd(1.0);
  __m256d s = _mm256_set1_pd(1.0);
  __m256d alive = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  for (int k = 1; k <= 48; ++k) {
    const double num = -((2.0 * k - 1.0) * (2.0 * k - 1.0));
    __m256d f = _mm256_div_pd(_mm256_set1_pd(num),
                              _mm256_mul_pd(x, _mm256_set1_pd(8.0 * k)));
    __m256d unew = _mm256_mul_pd(u, f);
    __m256d grow = _mm256_cmp_pd(abs_pd(unew), abs_pd(u), _CMP_GE_OQ);
    alive = _mm256_andnot_pd(grow, alive);
    u = _mm256_and_pd(alive, unew);
    s = _mm256_add_pd(s, u);
    if (_mm256_movemask_pd(alive) == 0) break;
  }
  const __m256d halfpi = _mm256_set1_pd(1.5707963267948966);
  __m256d pre = _mm256_sqrt_pd(_mm256_div_pd(halfpi, x));
  __m256d en = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), x));
  return _mm256_mul_pd(_mm256_mul_pd(pre, en), s);
}

LQW_AVX2 void k0_batch_avx2(const double* x, double* out, std::size_t n) {
  const __m256d lo =
      _mm256_set1_pd(lqw::detail::kK0PlainSeriesMax);
  const __m256d hi = _mm256_set1_pd(lqw::detail::kK0SeriesMax);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d series_m = _mm256_cmp_pd(v, lo, _CMP_LE_OQ);
    __m256d asym_m = _mm256_cmp_pd(v, hi, _CMP_GT_OQ);
    int sm = _mm256_movemask_pd(series_m);
    int am = _mm256_movemask_pd(asym_m);
    __m256d res = _mm256_setzero_pd();
    if (sm) {
      res = _mm256_blendv_pd(res, k0_series_pd(_mm256_min_pd(v, lo)),
                             series_m);
    }
    if (am) {
      res = _mm256_blendv_pd(res, k0_asym_pd(_mm256_max_pd(v, hi)), asym_m);
    }
    int mid = ~(sm | am) & 0xF;
    if (mid) {
      alignas(32) double tmp[4];
      _mm256_storeu_pd(tmp, res);
      for (int l = 0; l < 4; ++l) {
        if (mid & (1 << l)) tmp[l] = lqw::macdonald_k0(x[i + l]);
      }
      res = _mm256_loadu_pd(tmp);
    }
    _mm256_storeu_pd(out + i, res);
  }
  for (; i < n; ++i) out[i] = lqw::macdonald_k0(x[i]);
}

LQW_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double t[4];
  _mm256_storeu_pd(t, acc0);
  double acc = (t[0] + t[1]) + (t[2] + t[3]);
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

LQW_AVX2 void axpy_avx2(double alpha, const double* x, double* y,
                        std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

LQW_AVX2 void matvec_avx2(const double* a, std::size_t n, const double* x,
                          double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = dot_avx2(a + i * n, x, n);
  }
}

LQW_AVX2 PairMinResult pair_ratio_min_avx2(const double* xs, const double* ys,
                                           const double* s, std::size_t n,
                                           bool wrap, double period,
                                           double eps_floor, double sep_gate) {
  PairMinResult r;
  const double inf = std::numeric_limits<double>::infinity();
  r.min_ratio_sq = inf;
  r.min_sep_chord_sq = inf;

  const __m256d vinf = _mm256_set1_pd(inf);
  const __m256d vper = _mm256_set1_pd(period);
  const __m256d veps = _mm256_set1_pd(eps_floor);
  const __m256d vgate = _mm256_set1_pd(sep_gate);

  __m256d best = vinf, best_i = _mm256_setzero_pd(),
          best_j = _mm256_setzero_pd();
  __m256d bsep = vinf, bsep_i = _mm256_setzero_pd(),
          bsep_j = _mm256_setzero_pd();
  bool any = false;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const __m256d vxi = _mm256_set1_pd(xs[i]);
    const __m256d vyi = _mm256_set1_pd(ys[i]);
    const __m256d vsi = _mm256_set1_pd(s[i]);
    const __m256d vi = _mm256_set1_pd(static_cast<double>(i));
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + j), vxi);
      __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + j), vyi);
      __m256d chord2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
      __m256d geo = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(s + j), vsi));
      if (wrap) geo = _mm256_min_pd(geo, _mm256_sub_pd(vper, geo));
      __m256d vj = _mm256_set_pd(double(j + 3), double(j + 2), double(j + 1),
                                 double(j));
      __m256d adm = _mm256_cmp_pd(geo, veps, _CMP_GE_OQ);
      if (_mm256_movemask_pd(adm)) {
        any = true;
        __m256d ratio2 =
            _mm256_div_pd(chord2, _mm256_mul_pd(geo, geo));
        ratio2 = _mm256_blendv_pd(vinf, ratio2, adm);
        __m256d lt = _mm256_cmp_pd(ratio2, best, _CMP_LT_OQ);
        best = _mm256_min_pd(best, ratio2);
        best_i = _mm256_blendv_pd(best_i, vi, lt);
        best_j = _mm256_blendv_pd(best_j, vj, lt);
      }
      __m256d sep = _mm256_cmp_pd(geo, vgate, _CMP_GT_OQ);
      if (_mm256_movemask_pd(sep)) {
        __m256d cs = _mm256_blendv_pd(vinf, chord2, sep);
        __m256d lt = _mm256_cmp_pd(cs, bsep, _CMP_LT_OQ);
        bsep = _mm256_min_pd(bsep, cs);
        bsep_i = _mm256_blendv_pd(bsep_i, vi, lt);
        bsep_j = _mm256_blendv_pd(bsep_j, vj, lt);
      }
    }
    // scalar tail of the row
    for (; j < n; ++j) {
      const double dx = xs[j] - xs[i];
      const double dy = ys[j] - ys[i];
      const double chord2 = dx * dx + dy * dy;
      double geo = std::fabs(s[j] - s[i]);
      if (wrap) geo = std::min(geo, period - geo);
      if (geo >= eps_floor) {
        any = true;
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

  alignas(32) double bv[4], bi[4], bj[4], sv[4], si[4], sj[4];
  _mm256_storeu_pd(bv, best);
  _mm256_storeu_pd(bi, best_i);
  _mm256_storeu_pd(bj, best_j);
  _mm256_storeu_pd(sv, bsep);
  _mm256_storeu_pd(si, bsep_i);
  _mm256_storeu_pd(sj, bsep_j);
  for (int l = 0; l < 4; ++l) {
    if (bv[l] < r.min_ratio_sq) {
      r.min_ratio_sq = bv[l];
      r.arg_i = static_cast<std::uint32_t>(bi[l]);
      r.arg_j = static_cast<std::uint32_t>(bj[l]);
    }
    if (sv[l] < r.min_sep_chord_sq) {
      r.min_sep_chord_sq = sv[l];
      r.sep_i = static_cast<std::uint32_t>(si[l]);
      r.sep_j = static_cast<std::uint32_t>(sj[l]);
    }
  }
  r.any_pair = any;
  return r;
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k = {"avx2",        dot_avx2,      axpy_avx2,
                            matvec_avx2,   k0_batch_avx2, pair_ratio_min_avx2};
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &k;
  }
  return nullptr;
}

}  // namespace lqw::simd

#else

#include "lqw/simd/kernels.hpp"

namespace lqw::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace lqw::simd

#endif
