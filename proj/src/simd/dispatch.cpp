#include <cstdlib>
#include <cstring>

#include "kmlab/simd/kernels.hpp"

namespace kmlab::simd {

#if defined(__x86_64__) || defined(__i386__)
const Kernels* avx2_kernels_table();
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
const Kernels* neon_kernels_table();
#endif

namespace {

const Kernels* select() {
  const char* env = std::getenv("KMLAB_KERNELS");
  const bool want_scalar = env && std::strcmp(env, "scalar") == 0;
  if (want_scalar) return &scalar_kernels();
#if defined(__x86_64__) || defined(__i386__)
  const bool forced_avx2 = env && std::strcmp(env, "avx2") == 0;
  if (forced_avx2 ||
      (!env || std::strcmp(env, "auto") == 0) ) {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
      return avx2_kernels_table();
    }
    if (forced_avx2) return &scalar_kernels();  // requested but unavailable
  }
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
  if (!env || std::strcmp(env, "auto") == 0 || std::strcmp(env, "neon") == 0) {
    return neon_kernels_table();
  }
#endif
  return &scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() {
  static const Kernels* chosen = select();
  return *chosen;
}

const char* active_lane() { return active_kernels().name; }

}  // namespace kmlab::simd
