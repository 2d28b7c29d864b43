// NEON (aarch64) variants. One complex<double> per 128-bit vector; the
// complex multiply uses vcmla-free mul/fma shuffles so it builds on
// baseline armv8-a.

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include "kmlab/simd/kernels.hpp"

namespace kmlab::simd {
namespace {

// [re,im] of x*a for a=(ar,ai): [xr*ar - xi*ai, xi*ar + xr*ai]
inline float64x2_t cmul(float64x2_t x, float64x2_t ar, float64x2_t ai_neg_pos) {
  float64x2_t xs = vextq_f64(x, x, 1);  // [xi, xr]
  return vfmaq_f64(vmulq_f64(xs, ai_neg_pos), x, ar);
}

void caxpy_neon(std::size_t n, cd a, const cd* x, cd* y) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ain = {-a.imag(), a.imag()};
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    float64x2_t yv = vld1q_f64(yp + 2 * i);
    vst1q_f64(yp + 2 * i, vaddq_f64(yv, cmul(xv, ar, ain)));
  }
}

cd cdotc_neon(std::size_t n, const cd* x, const cd* y) {
  float64x2_t acc1 = vdupq_n_f64(0.0);  // [xr*yr, xi*yi]
  float64x2_t acc2 = vdupq_n_f64(0.0);  // [xi*yr, xr*yi]
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    float64x2_t yv = vld1q_f64(yp + 2 * i);
    acc1 = vfmaq_f64(acc1, xv, yv);
    acc2 = vfmaq_f64(acc2, vextq_f64(xv, xv, 1), yv);
  }
  return cd(vgetq_lane_f64(acc1, 0) + vgetq_lane_f64(acc1, 1),
            vgetq_lane_f64(acc2, 1) - vgetq_lane_f64(acc2, 0));
}

cd cdotu_neon(std::size_t n, const cd* x, const cd* y) {
  float64x2_t acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0);
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    float64x2_t yv = vld1q_f64(yp + 2 * i);
    acc1 = vfmaq_f64(acc1, xv, yv);
    acc2 = vfmaq_f64(acc2, vextq_f64(xv, xv, 1), yv);
  }
  return cd(vgetq_lane_f64(acc1, 0) - vgetq_lane_f64(acc1, 1),
            vgetq_lane_f64(acc2, 0) + vgetq_lane_f64(acc2, 1));
}

double sum_abs2_neon(std::size_t n, const cd* x) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double* xp = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    acc = vfmaq_f64(acc, xv, xv);
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

void cscale_neon(std::size_t n, cd a, cd* x) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ain = {-a.imag(), a.imag()};
  double* xp = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    vst1q_f64(xp + 2 * i, cmul(xv, ar, ain));
  }
}

}  // namespace

const Kernels* neon_kernels_table() {
  static const Kernels table = {caxpy_neon, cdotc_neon, cdotu_neon,
                                sum_abs2_neon, cscale_neon, "neon"};
  return &table;
}

}  // namespace kmlab::simd

#endif  // aarch64
