#include "kmlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "kmlab/simd/kernels.hpp"

namespace kmlab {

namespace {
const simd::Kernels& K() { return simd::active_kernels(); }
constexpr double kPivotRelTol = 1e-12;
}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cd>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

bool ComplexMatrix::finite() const {
  for (const cd& z : a_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::block(int i0, int j0, int nrows, int ncols) const {
  ComplexMatrix m(nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
  return m;
}

void ComplexMatrix::set_block(int i0, int j0, const ComplexMatrix& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd s) {
  K().cscale(a_.size(), s, a_.data());
  return *this;
}

double ComplexMatrix::frobenius_norm() const {
  return std::sqrt(K().sum_abs2(a_.size(), a_.data()));
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cd& z : a_) m = std::max(m, std::abs(z));
  return m;
}

cd ComplexMatrix::trace() const {
  cd t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = static_cast<std::size_t>(b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    cd* ci = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      const cd aik = a(i, k);
      if (aik != cd(0.0)) K().caxpy(n, aik, b.row(k), ci);
    }
  }
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexMatrix LDUFactorization::reconstruct() const {
  ComplexMatrix du = u;
  for (int i = 0; i < du.rows(); ++i) K().cscale(du.cols(), d[i], du.row(i));
  return matmul(l, du);
}

namespace {

// Row-norm scale for the relative pivot tolerance.
double row_scale(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double r = std::sqrt(K().sum_abs2(m.cols(), m.row(i)));
    s = std::max(s, r);
  }
  return s;
}

}  // namespace

LDUFactorization ldu(const ComplexMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error("ldu: matrix not square");
  if (!m.finite()) throw Error("ldu: non-finite entries");
  const double tol = kPivotRelTol * std::max(row_scale(m), 1e-300);

  ComplexMatrix work = m;
  ComplexMatrix l = ComplexMatrix::identity(n);
  LDUFactorization f;
  f.d.resize(n);
  f.pivots.resize(n);
  cd run = 1.0;
  for (int k = 0; k < n; ++k) {
    const cd piv = work(k, k);
    if (std::abs(piv) < tol) throw SingularMinor(k + 1);
    f.d[k] = piv;
    run *= piv;
    f.pivots[k] = run;
    for (int i = k + 1; i < n; ++i) {
      const cd lik = work(i, k) / piv;
      l(i, k) = lik;
      // eliminate row i beyond column k
      K().caxpy(static_cast<std::size_t>(n - k), -lik, work.row(k) + k,
                work.row(i) + k);
      work(i, k) = 0.0;
    }
  }
  ComplexMatrix u = ComplexMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = work(i, j) / f.d[i];
  f.l = std::move(l);
  f.u = std::move(u);
  return f;
}

cd determinant_cofactor(const ComplexMatrix& m) {
  const int n = m.rows();
  if (n == 1) return m(0, 0);
  cd det = 0.0;
  double sign = 1.0;
  for (int j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, jj++) = m(i, k);
      }
    }
    det += sign * m(0, j) * determinant_cofactor(minor);
    sign = -sign;
  }
  return det;
}

namespace {

// Partial-pivoted determinant (values; no Bruhat semantics needed here).
cd det_pivoted(ComplexMatrix a) {
  const int n = a.rows();
  cd det = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); p = i; }
    }
    if (best == 0.0) return 0.0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cd f = a(i, k) / a(k, k);
      K().caxpy(static_cast<std::size_t>(n - k), -f, a.row(k) + k, a.row(i) + k);
    }
  }
  return det;
}

}  // namespace

std::vector<cd> leading_minors(const ComplexMatrix& m) {
  const int n = m.rows();
  std::vector<cd> out(n);
  try {
    LDUFactorization f = ldu(m);
    return f.pivots;
  } catch (const SingularMinor&) {
    for (int j = 1; j <= n; ++j) out[j - 1] = det_pivoted(m.block(0, 0, j, j));
    return out;
  }
}

cd determinant(const ComplexMatrix& m) { return det_pivoted(m); }

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); p = i; }
    }
    if (best < 1e-300) throw SingularBlock();
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
    }
    for (int i = k + 1; i < n; ++i) {
      const cd f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      K().caxpy(static_cast<std::size_t>(n - k - 1), -f, lu.row(k) + k + 1,
                lu.row(i) + k + 1);
      K().caxpy(static_cast<std::size_t>(x.cols()), -f, x.row(k), x.row(i));
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    K().cscale(static_cast<std::size_t>(x.cols()), 1.0 / lu(k, k), x.row(k));
    for (int i = 0; i < k; ++i) {
      K().caxpy(static_cast<std::size_t>(x.cols()), -lu(i, k), x.row(k), x.row(i));
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

ComplexMatrix schur_complement(const ComplexMatrix& g, int m) {
  const int n2 = g.rows() - m;
  ComplexMatrix a11 = g.block(0, 0, m, m);
  ComplexMatrix a12 = g.block(0, m, m, n2);
  ComplexMatrix a21 = g.block(m, 0, n2, m);
  ComplexMatrix a22 = g.block(m, m, n2, n2);
  ComplexMatrix t = solve(a11, a12);  // throws SingularBlock
  return a22 - matmul(a21, t);
}

namespace {

double norm_1(const ComplexMatrix& m) {
  double best = 0.0;
  for (int j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& m) {
  // Pade(13) coefficients
  static const double b[] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const int n = m.rows();
  const double theta13 = 5.371920351148152;
  const double nrm = norm_1(m);
  int squarings = 0;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  }
  ComplexMatrix a = m;
  if (squarings > 0) a *= cd(std::ldexp(1.0, -squarings));

  ComplexMatrix a2 = matmul(a, a);
  ComplexMatrix a4 = matmul(a2, a2);
  ComplexMatrix a6 = matmul(a2, a4);
  ComplexMatrix id = ComplexMatrix::identity(n);

  ComplexMatrix w1 = cd(b[13]) * a6 + cd(b[11]) * a4 + cd(b[9]) * a2;
  ComplexMatrix w2 = cd(b[7]) * a6 + cd(b[5]) * a4 + cd(b[3]) * a2 + cd(b[1]) * id;
  ComplexMatrix u = matmul(a, matmul(a6, w1) + w2);
  ComplexMatrix z1 = cd(b[12]) * a6 + cd(b[10]) * a4 + cd(b[8]) * a2;
  ComplexMatrix v = matmul(a6, z1) + cd(b[6]) * a6 + cd(b[4]) * a4 +
                    cd(b[2]) * a2 + cd(b[0]) * id;

  ComplexMatrix r = solve(v - u, v + u);
  for (int s = 0; s < squarings; ++s) r = matmul(r, r);
  return r;
}

QRFactorization qr_unitary(const ComplexMatrix& m) {
  const int n = m.rows();
  ComplexMatrix r = m;
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<cd> v(n);
  const double tol = 1e-300;

  for (int k = 0; k < n; ++k) {
    // Householder vector for column k
    double xnorm2 = 0.0;
    for (int i = k; i < n; ++i) xnorm2 += std::norm(r(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm < tol) throw RankDeficient();
    const cd x0 = r(k, k);
    const double ax0 = std::abs(x0);
    const cd phase = (ax0 > 0) ? x0 / ax0 : cd(1.0);
    const cd alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 < tol) continue;  // column already reduced
    const double beta = 2.0 / vnorm2;
    // r -= beta v (v^* r); q -= beta (q v) v^*
    for (int j = k; j < n; ++j) {
      cd s = 0.0;
      for (int i = k; i < n; ++i) s += std::conj(v[i]) * r(i, j);
      s *= beta;
      for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      cd s = 0.0;
      for (int j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= beta;
      for (int j = k; j < n; ++j) q(i, j) -= s * std::conj(v[j]);
    }
  }
  // absorb diagonal phases into q, making diag(r) real positive
  for (int k = 0; k < n; ++k) {
    const cd d = r(k, k);
    const double ad = std::abs(d);
    if (ad < tol) throw RankDeficient();
    const cd ph = d / ad;
    for (int j = k; j < n; ++j) r(k, j) *= std::conj(ph);
    for (int i = 0; i < n; ++i) q(i, k) *= ph;
    r(k, k) = ad;
  }
  // clean the strictly-lower part (exact zeros by construction)
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) r(i, j) = 0.0;
  return {std::move(q), std::move(r)};
}

}  // namespace kmlab
