#include <cstdlib>
#include <string_view>

#include "lqw/simd/kernels.hpp"

namespace lqw::simd {

const Kernels& active_kernels() {
  static const Kernels* chosen = [] {
    std::string_view want;
    if (const char* env = std::getenv("LQW_SIMD")) want = env;
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2") {
      if (const Kernels* k = avx2_kernels()) return k;
      return &scalar_kernels();
    }
    if (want == "neon") {
      if (const Kernels* k = neon_kernels()) return k;
      return &scalar_kernels();
    }
    if (const Kernels* k = avx2_kernels()) return k;
    if (const Kernels* k = neon_kernels()) return k;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace lqw::simd
