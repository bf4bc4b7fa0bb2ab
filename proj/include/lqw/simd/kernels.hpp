#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops behind the numerics: dense matrix-vector
// products (Krylov iterations), batched K0 evaluation (operator assembly),
// and the all-pairs chord/arc ratio scan. Each kernel has a scalar
// reference implementation plus AVX2 and NEON variants selected at runtime;
// the variants are equivalence-tested against the scalar versions.
namespace lqw::simd {

struct PairMinResult {
  double min_ratio_sq = 0.0;  // min over admissible pairs of chord^2/geo^2
  std::uint32_t arg_i = 0;
  std::uint32_t arg_j = 0;
  double min_sep_chord_sq = 0.0;  // min chord^2 at geodesic separation > gate
  std::uint32_t sep_i = 0;
  std::uint32_t sep_j = 0;
  bool any_pair = false;
};

struct Kernels {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = A x, A dense row-major n x n.
  void (*matvec)(const double* a, std::size_t n, const double* x, double* y);
  // out[i] = K0(x[i]); x[i] > 0 finite, zero on underflow.
  void (*k0_batch)(const double* x, double* out, std::size_t n);
  // Ordered pairs i < j of points on one curve. Pairs with arc separation
  // below eps_floor are excluded from the ratio minimum; pairs separated by
  // more than sep_gate feed the self-intersection chord minimum.
  PairMinResult (*pair_ratio_min)(const double* xs, const double* ys,
                                  const double* s, std::size_t n, bool wrap,
                                  double period, double eps_floor,
                                  double sep_gate);
};

// Kernel table in use: best supported instruction set, overridable with
// LQW_SIMD=scalar|avx2|neon in the environment.
const Kernels& active_kernels();

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when the host lacks AVX2+FMA
const Kernels* neon_kernels();  // nullptr off aarch64

}  // namespace lqw::simd
