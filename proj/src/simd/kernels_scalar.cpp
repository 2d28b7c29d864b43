#include "kmlab/simd/kernels.hpp"

namespace kmlab::simd {
namespace {

void caxpy_scalar(std::size_t n, cd a, const cd* x, cd* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cd(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
  }
}

cd cdotc_scalar(std::size_t n, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return cd(re, im);
}

cd cdotu_scalar(std::size_t n, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return cd(re, im);
}

double sum_abs2_scalar(std::size_t n, const cd* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void cscale_scalar(std::size_t n, cd a, cd* x) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cd(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

const Kernels table = {caxpy_scalar, cdotc_scalar, cdotu_scalar,
                       sum_abs2_scalar, cscale_scalar, "scalar"};

}  // namespace

const Kernels& scalar_kernels() { return table; }

}  // namespace kmlab::simd
