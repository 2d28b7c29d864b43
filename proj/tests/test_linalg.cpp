#include <cmath>

#include "doctest.h"
#include "kmlab/ensembles.hpp"
#include "kmlab/linalg.hpp"

using namespace kmlab;

namespace {

ComplexMatrix mat2(cd a, cd b, cd c, cd d) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

double rel_residual(const ComplexMatrix& got, const ComplexMatrix& want) {
  return (got - want).frobenius_norm() / (1.0 + want.frobenius_norm());
}

// power-series matrix exponential, the independent oracle for expm
ComplexMatrix expm_series(const ComplexMatrix& m, int terms) {
  ComplexMatrix acc = ComplexMatrix::identity(m.rows());
  ComplexMatrix pow = ComplexMatrix::identity(m.rows());
  for (int k = 1; k <= terms; ++k) {
    pow = matmul(pow, m);
    pow *= cd(1.0 / k);
    acc += pow;
  }
  return acc;
}

}  // namespace

TEST_CASE("ldu identity and hand cases") {
  const auto f = ldu(ComplexMatrix::identity(3));
  for (int j = 0; j < 3; ++j) {
    CHECK(f.d[j] == cd(1.0));
    CHECK(f.pivots[j] == cd(1.0));
  }
  CHECK(rel_residual(f.reconstruct(), ComplexMatrix::identity(3)) < 1e-15);

  // vanishing leading minor
  CHECK_THROWS_AS(ldu(mat2(0, 1, 1, 0)), SingularMinor);
  try {
    ldu(mat2(0, 1, 1, 0));
  } catch (const SingularMinor& e) {
    CHECK(e.index == 1);
  }

  // [[1,2],[3,4]]: multiply back and check against direct 2x2 determinants
  const auto g = ldu(mat2(1, 2, 3, 4));
  CHECK(g.l(1, 0) == cd(3.0));
  CHECK(g.d[0] == cd(1.0));
  CHECK(g.d[1] == cd(-2.0));
  CHECK(g.u(0, 1) == cd(2.0));
  CHECK(g.pivots[0] == cd(1.0));
  CHECK(g.pivots[1] == cd(-2.0));
  CHECK(rel_residual(g.reconstruct(), mat2(1, 2, 3, 4)) < 1e-15);
}

TEST_CASE("ldu reconstruction and pivots vs cofactor oracle") {
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const ComplexMatrix m =
          ginibre(n, 2.0, {11, static_cast<std::uint64_t>(n)}, trial);
      LDUFactorization f;
      try {
        f = ldu(m);
      } catch (const SingularMinor&) {
        continue;  // measure-zero; skip
      }
      CHECK(rel_residual(f.reconstruct(), m) < 1e-10);
      for (int j = 1; j <= n; ++j) {
        const cd oracle = determinant_cofactor(m.block(0, 0, j, j));
        CHECK(std::abs(f.pivots[j - 1] - oracle) <=
              1e-10 * (1.0 + std::abs(oracle)));
      }
      // unit diagonals
      for (int i = 0; i < n; ++i) {
        CHECK(f.l(i, i) == cd(1.0));
        CHECK(f.u(i, i) == cd(1.0));
      }
    }
  }
}

TEST_CASE("leading minors") {
  std::vector<cd> d = {2.0, 3.0, 4.0};
  const auto m = leading_minors(ComplexMatrix::diagonal(d));
  CHECK(m[0] == cd(2.0));
  CHECK(m[1] == cd(6.0));
  CHECK(m[2] == cd(24.0));
  // zero minors are values, not errors
  const auto z = leading_minors(mat2(0, 1, 1, 0));
  CHECK(std::abs(z[0]) == 0.0);
  CHECK(std::abs(z[1] + 1.0) < 1e-14);
  // random 4x4 vs cofactor oracle
  const ComplexMatrix r = ginibre(4, 2.0, {5, 1}, 0);
  const auto lm = leading_minors(r);
  for (int j = 1; j <= 4; ++j) {
    const cd oracle = determinant_cofactor(r.block(0, 0, j, j));
    CHECK(std::abs(lm[j - 1] - oracle) < 1e-10 * (1.0 + std::abs(oracle)));
  }
}

TEST_CASE("schur complement") {
  // block diagonal: returns a22
  ComplexMatrix g(4, 4);
  g.set_block(0, 0, mat2(2, 0, 0, 2));
  g.set_block(2, 2, mat2(3, 1, 0, 5));
  const auto s = schur_complement(g, 2);
  CHECK(rel_residual(s, mat2(3, 1, 0, 5)) < 1e-15);

  // all-identity blocks: a22 - a12 = 0
  ComplexMatrix h(4, 4);
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) h.set_block(2 * b, 2 * c, ComplexMatrix::identity(2));
  CHECK(schur_complement(h, 2).max_abs() < 1e-14);

  // inverse consistency: (g^{-1})_{22} = schur(g)^{-1}
  const ComplexMatrix r = ginibre(5, 2.0, {6, 2}, 1) +
                          cd(3.0) * ComplexMatrix::identity(5);
  const auto inv = inverse(r);
  const auto lower = inv.block(2, 2, 3, 3);
  const auto sc = schur_complement(r, 2);
  CHECK(rel_residual(inverse(sc), lower) < 1e-9);

  // singular a11
  ComplexMatrix bad(4, 4);
  bad.set_block(2, 2, ComplexMatrix::identity(2));
  CHECK_THROWS_AS(schur_complement(bad, 2), SingularBlock);
}

TEST_CASE("expm") {
  CHECK(rel_residual(expm(ComplexMatrix::zero(3, 3)), ComplexMatrix::identity(3)) <
        1e-15);
  std::vector<cd> d = {cd(0.3, 0.5), cd(-1.0, 0.0), cd(0.0, -2.0)};
  const auto e = expm(ComplexMatrix::diagonal(d));
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(e(i, i) - std::exp(d[i])) < 1e-13);

  // [[0,t],[t,0]] at t = 0.7 against the power-series oracle
  const double t = 0.7;
  const auto m = mat2(0, t, t, 0);
  const auto got = expm(m);
  const auto oracle = expm_series(m, 40);
  CHECK(rel_residual(got, oracle) < 1e-13);
  CHECK(std::abs(got(0, 0) - std::cosh(t)) < 1e-13);
  CHECK(std::abs(got(0, 1) - std::sinh(t)) < 1e-13);

  // commuting pair: expm(a + b) = expm(a) expm(b)
  std::vector<cd> da = {cd(0.2, 0.1), cd(-0.4, 0.3)};
  const auto a = ComplexMatrix::diagonal(da);
  ComplexMatrix b = ComplexMatrix::identity(2);
  b *= cd(0.5, -0.2);
  const auto lhs = expm(a + b);
  const auto rhs = matmul(expm(a), expm(b));
  CHECK((lhs - rhs).max_abs() < 1e-11);
}

TEST_CASE("qr unitary") {
  const auto f0 = qr_unitary(ComplexMatrix::identity(3));
  CHECK(rel_residual(f0.q, ComplexMatrix::identity(3)) < 1e-14);
  CHECK(rel_residual(f0.r, ComplexMatrix::identity(3)) < 1e-14);

  // unitary input: R diagonal positive, Q = input up to that phase fix
  const ComplexMatrix u = haar_unitary(4, {7, 3}, 0);
  const auto fu = qr_unitary(u);
  for (int i = 0; i < 4; ++i) {
    CHECK(fu.r(i, i).real() == doctest::Approx(1.0).epsilon(1e-10));
    for (int j = i + 1; j < 4; ++j) CHECK(std::abs(fu.r(i, j)) < 1e-10);
  }

  // random 5x5: reconstruction + unitarity residuals
  const ComplexMatrix m = ginibre(5, 2.0, {7, 4}, 1);
  const auto f = qr_unitary(m);
  CHECK(rel_residual(matmul(f.q, f.r), m) < 1e-10);
  CHECK((matmul(f.q.adjoint(), f.q) - ComplexMatrix::identity(5)).max_abs() <
        1e-10);
  for (int i = 0; i < 5; ++i) {
    CHECK(f.r(i, i).imag() == 0.0);
    CHECK(f.r(i, i).real() > 0.0);
  }
}

TEST_CASE("det via ldu agrees with qr magnitude and phase") {
  for (int trial = 0; trial < 4; ++trial) {
    const ComplexMatrix m = ginibre(5, 2.0, {8, 5}, trial);
    const auto f = ldu(m);
    const cd det_ldu = f.pivots[4];
    const auto qr = qr_unitary(m);
    cd det_qr = determinant(qr.q);
    for (int i = 0; i < 5; ++i) det_qr *= qr.r(i, i);
    CHECK(std::abs(det_ldu - det_qr) < 1e-9 * (1.0 + std::abs(det_qr)));
  }
}

TEST_CASE("construction invariants") {
  ComplexMatrix m(2, 2);
  m(0, 0) = cd(std::nan(""), 0.0);
  CHECK(!m.finite());
  CHECK_THROWS_AS(ldu(m), Error);
}
