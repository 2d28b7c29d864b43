// AVX2+FMA variants. Two interleaved complex<double> per 256-bit vector.
// Complex multiply uses the shuffle/fmaddsub pattern: for a = ar + i*ai,
//   re = ar*xr - ai*xi   (even lanes, subtract)
//   im = ar*xi + ai*xr   (odd lanes, add)

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "kmlab/simd/kernels.hpp"

namespace kmlab::simd {
namespace {

inline __m256d cmul_acc(__m256d x, __m256d ar, __m256d ai) {
  __m256d xs = _mm256_permute_pd(x, 0x5);  // swap re/im within pairs
  return _mm256_fmaddsub_pd(x, ar, _mm256_mul_pd(xs, ai));
}

void caxpy_avx2(std::size_t n, cd a, const cd* x, cd* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul_acc(xv, ar, ai)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cd(y[i].real() + a.real() * xr - a.imag() * xi,
              y[i].imag() + a.real() * xi + a.imag() * xr);
  }
}

// even/odd lane sums of [e0,o0,e1,o1]
inline void hsum_eo(__m256d v, double& even, double& odd) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  even = _mm_cvtsd_f64(s);
  odd = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

cd cdotc_avx2(std::size_t n, const cd* x, const cd* y) {
  __m256d acc1 = _mm256_setzero_pd();  // xr*yr | xi*yi
  __m256d acc2 = _mm256_setzero_pd();  // xi*yr | xr*yi
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc1 = _mm256_fmadd_pd(xv, yv, acc1);
    acc2 = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, acc2);
  }
  double e1, o1, e2, o2;
  hsum_eo(acc1, e1, o1);
  hsum_eo(acc2, e2, o2);
  double re = e1 + o1;   // xr*yr + xi*yi
  double im = o2 - e2;   // xr*yi - xi*yr
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return cd(re, im);
}

cd cdotu_avx2(std::size_t n, const cd* x, const cd* y) {
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc1 = _mm256_fmadd_pd(xv, yv, acc1);
    acc2 = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, acc2);
  }
  double e1, o1, e2, o2;
  hsum_eo(acc1, e1, o1);
  hsum_eo(acc2, e2, o2);
  double re = e1 - o1;   // xr*yr - xi*yi
  double im = e2 + o2;   // xi*yr + xr*yi
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return cd(re, im);
}

double sum_abs2_avx2(std::size_t n, const cd* x) {
  __m256d acc = _mm256_setzero_pd();
  const double* xp = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double e, o;
  hsum_eo(acc, e, o);
  double s = e + o;
  for (; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void cscale_avx2(std::size_t n, cd a, cd* x) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  double* xp = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    _mm256_storeu_pd(xp + 2 * i, cmul_acc(xv, ar, ai));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cd(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
  }
}

}  // namespace

const Kernels* avx2_kernels_table() {
  static const Kernels table = {caxpy_avx2, cdotc_avx2, cdotu_avx2,
                                sum_abs2_avx2, cscale_avx2, "avx2"};
  return &table;
}

}  // namespace kmlab::simd

#endif  // x86
