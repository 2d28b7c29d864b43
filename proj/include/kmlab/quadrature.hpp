// Adaptive Gauss-Kronrod (G7,K15) quadrature.

#pragma once

#include <cmath>
#include <functional>

#include "kmlab/errors.hpp"

namespace kmlab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long long evaluations = 0;
};

namespace detail {

// G7/K15 nodes and weights on [-1, 1]
inline const double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline const double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline const double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                        0.381830050505119, 0.417959183673469};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fk[15];
  for (int i = 0; i < 15; ++i) fk[i] = f(c + h * kKronrodNodes[i]);
  double k = 0.0;
  for (int i = 0; i < 15; ++i) k += fk[i] * kKronrodWeights[i];
  double g = kGaussWeights[3] * fk[7];
  for (int i = 0; i < 3; ++i) g += kGaussWeights[i] * (fk[1 + 2 * i] + fk[13 - 2 * i]);
  value = k * h;
  err = std::abs((k - g) * h);
}

template <class F>
void adapt(const F& f, double a, double b, double tol, int depth,
           QuadratureResult& out) {
  double v, e;
  gk15(f, a, b, v, e);
  out.evaluations += 15;
  if (e <= tol || depth >= 38) {
    out.value += v;
    out.error += e;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

// Adaptive integral of f over [a, b] to absolute tolerance tol.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double tol) {
  QuadratureResult out;
  // seed with a few panels so narrow features are not missed
  const int panels = 8;
  for (int p = 0; p < panels; ++p) {
    const double x0 = a + (b - a) * p / panels;
    const double x1 = a + (b - a) * (p + 1) / panels;
    detail::adapt(f, x0, x1, tol / panels, 0, out);
  }
  return out;
}

}  // namespace kmlab
