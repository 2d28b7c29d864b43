// Dense complex linear algebra: Bruhat/LDU factorization with pivot minors,
// Schur complements, matrix exponential, unitary QR.
//
// LDU is deliberately unpivoted: the factorization g = l * diag(d) * u with
// unit-triangular l, u is the Gaussian (Bruhat) factorization whose diagonal
// carries the pivot semantics; row exchanges would destroy it.  Off-stratum
// inputs (a vanishing leading minor) are rejected with SingularMinor.

#pragma once

#include <complex>
#include <vector>

#include "kmlab/errors.hpp"

namespace kmlab {

using cd = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(const std::vector<cd>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cd& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  cd* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  const cd* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }

  bool finite() const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix block(int i0, int j0, int nrows, int ncols) const;
  void set_block(int i0, int j0, const ComplexMatrix& b);

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cd s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(cd s, ComplexMatrix a) { return a *= s; }

  double frobenius_norm() const;
  double max_abs() const;
  cd trace() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cd> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

struct LDUFactorization {
  ComplexMatrix l;        // unit lower triangular
  std::vector<cd> d;      // nonzero diagonal
  ComplexMatrix u;        // unit upper triangular
  std::vector<cd> pivots; // sigma_j = prod_{i<=j} d_i

  ComplexMatrix reconstruct() const;
};

// Gaussian (Bruhat) factorization of a square matrix.  Throws SingularMinor(j)
// when |d_j| < tol_scale * 1e-12, where tol_scale is the max row norm.
LDUFactorization ldu(const ComplexMatrix& m);

// Leading principal minors det A^{(j)}, j = 1..n.  Computed through the
// running pivot products when the factorization exists, with a cofactor
// fallback past the first vanishing pivot (zero minors are legal values).
std::vector<cd> leading_minors(const ComplexMatrix& m);

// Determinant via unpivoted elimination with the cofactor fallback.
cd determinant(const ComplexMatrix& m);

// Explicit cofactor-expansion determinant; O(n!) - test oracle for n <= 6,
// exposed here so suites and tests share one implementation.
cd determinant_cofactor(const ComplexMatrix& m);

// a22 - a21 a11^{-1} a12 for g = [[a11,a12],[a21,a22]] with a11 of size m.
ComplexMatrix schur_complement(const ComplexMatrix& g, int m);

// Solve a x = b (general square a, partial-pivoted internally: plain linear
// solves carry no Bruhat semantics).
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

// Scaling-and-squaring matrix exponential with the order-13 diagonal Pade
// kernel (squaring threshold ||m||_1 <= 5.37, the standard theta_13).
ComplexMatrix expm(const ComplexMatrix& m);

struct QRFactorization {
  ComplexMatrix q;  // unitary
  ComplexMatrix r;  // upper triangular, real positive diagonal
};

// Householder QR with the column phases absorbed into q so that diag(r) is
// real positive.  Throws RankDeficient when a pivot underflows.
QRFactorization qr_unitary(const ComplexMatrix& m);

}  // namespace kmlab
