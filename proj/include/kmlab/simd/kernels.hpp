// Runtime-dispatched complex double-precision kernels.
//
// The Monte-Carlo suites spend almost all of their time in small dense
// complex linear algebra (LDU elimination rows, Householder reflections,
// matrix products), which reduces to the axpy/dot/norm kernels below over
// contiguous interleaved complex<double> arrays.  A scalar reference
// implementation always exists; an AVX2+FMA (x86-64) or NEON (aarch64)
// variant is selected once at startup when the CPU supports it.
//
// Selection can be forced with the environment variable
//   KMLAB_KERNELS=scalar|avx2|neon|auto     (default: auto)
//
// The vector variants may differ from the scalar ones in the last bits
// (fused multiply-add, reassociated reductions).  Results are reproducible
// for a fixed lane; the active lane name is recorded in suite reports.

#pragma once

#include <complex>
#include <cstddef>

namespace kmlab::simd {

using cd = std::complex<double>;

struct Kernels {
  // y[i] += a * x[i]
  void (*caxpy)(std::size_t n, cd a, const cd* x, cd* y);
  // sum conj(x[i]) * y[i]
  cd (*cdotc)(std::size_t n, const cd* x, const cd* y);
  // sum x[i] * y[i]
  cd (*cdotu)(std::size_t n, const cd* x, const cd* y);
  // sum |x[i]|^2
  double (*sum_abs2)(std::size_t n, const cd* x);
  // x[i] *= a
  void (*cscale)(std::size_t n, cd a, cd* x);
  const char* name;
};

const Kernels& scalar_kernels();

// Active table, chosen once (cpuid + KMLAB_KERNELS override).
const Kernels& active_kernels();

// Lane name of the active table ("scalar", "avx2", "neon").
const char* active_lane();

}  // namespace kmlab::simd
