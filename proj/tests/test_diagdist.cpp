#include <cmath>

#include "doctest.h"
#include "kmlab/diagdist.hpp"

using namespace kmlab;

TEST_CASE("a_coordinates hand cases") {
  // identity -> a = (1, ..., 1)
  GroupSpec su3{GroupFamily::A, 3, GroupBasis::standard};
  const auto id = a_coordinates(ComplexMatrix::identity(3), su3);
  for (double a : id.a) CHECK(a == 1.0);

  // SU(2): a_1 = |g_11| (2x2 elimination gives sigma_1 = g_11)
  GroupSpec su2{GroupFamily::A, 2, GroupBasis::standard};
  const ComplexMatrix g = haar_special_unitary(2, {41, 0}, 3);
  const auto ac = a_coordinates(g, su2);
  CHECK(ac.a[0] == doctest::Approx(std::abs(g(0, 0))).epsilon(1e-14));
  // SU(n): product of pivot moduli is |det| = 1
  CHECK(ac.a[0] * ac.a[1] == doctest::Approx(1.0).epsilon(1e-12));

  // SO(2) rotation in the quadratic-form basis: a_1 = 1 (hand LDU of
  // diag(e^{it}, e^{-it}))
  GroupSpec so2{GroupFamily::D, 1, GroupBasis::quadratic_form};
  const ComplexMatrix r = haar_compact(so2, {41, 1}, 5);
  const auto ar = a_coordinates(r, so2);
  CHECK(ar.a[0] == doctest::Approx(1.0).epsilon(1e-12));

  // off-stratum rejection
  ComplexMatrix w(2, 2);
  w(0, 1) = 1.0;
  w(1, 0) = 1.0;
  CHECK_THROWS_AS(a_coordinates(w, su2), OffStratum);
  // standard basis rejected for B/C/D
  GroupSpec bad{GroupFamily::C, 2, GroupBasis::standard};
  CHECK_THROWS_AS(a_coordinates(ComplexMatrix::identity(4), bad), Error);
}

TEST_CASE("empirical cf basics") {
  GroupSpec su2{GroupFamily::A, 2, GroupBasis::standard};
  ABatch batch = sample_a_batch(su2, 20000, {42, 0}, 2);
  // lambda = 0 -> value 1, stderr 0
  SpectralParam zero;
  const auto e0 = empirical_cf(batch, zero);
  CHECK(e0.value == cd(1.0));
  CHECK(e0.stderr_ == 0.0);
  // conjugation symmetry with the same samples, and the modulus bound
  SpectralParam lam = SpectralParam::of({{1, 2.0}});
  const auto ep = empirical_cf(batch, lam);
  const auto em = empirical_cf(batch, lam.negated());
  CHECK(std::abs(ep.value - std::conj(em.value)) < 1e-12);
  CHECK(std::abs(ep.value) <= 1.0 + 4.0 * ep.stderr_);
  // SU(2), lambda = (2, 0): within 4 SE of (1 - i)^{-1}
  const auto v = compare(ep, 1.0 / cd(1.0, -1.0));
  CHECK(v.pass);
}

TEST_CASE("weighted estimator reduces at s = 0") {
  GroupSpec su2{GroupFamily::A, 2, GroupBasis::standard};
  ABatch batch = sample_a_batch(su2, 5000, {43, 0}, 1);
  SpectralParam lam = SpectralParam::of({{1, 1.0}});
  const auto plain = empirical_cf(batch, lam);
  const auto w0 = empirical_cf_weighted(batch, lam, 0.0, WeightKind::sigma_r, 1);
  CHECK(std::abs(plain.value - w0.value) < 1e-14);
  CHECK(w0.ess == doctest::Approx(double(w0.n_samples)).epsilon(1e-12));
}

TEST_CASE("compare verdicts") {
  EmpiricalCF e;
  e.value = cd(0.5, 0.0);
  e.stderr_ = 0.1;
  e.n_samples = 100;
  CHECK(compare(e, cd(0.5, 0.0)).z == 0.0);
  CHECK(compare(e, cd(0.5, 0.0)).pass);
  CHECK_FALSE(compare(e, cd(0.5 + 0.5 * 0.1 * 10.0, 0.0)).pass);  // 5 SE off
  // batch aggregation: all-pass iff each pass
  bool all = true;
  for (double ref : {0.5, 0.52, 0.45}) {
    all = all && compare(e, cd(ref, 0.0)).pass;
  }
  CHECK(all);
  all = true;
  for (double ref : {0.5, 1.5}) all = all && compare(e, cd(ref, 0.0)).pass;
  CHECK_FALSE(all);
}

TEST_CASE("left invariance at the estimator level") {
  GroupSpec su2{GroupFamily::A, 2, GroupBasis::standard};
  const ComplexMatrix u = haar_special_unitary(2, {44, 9}, 0);
  ABatch plain = sample_a_batch(su2, 40000, {44, 0}, 2);
  ABatch moved = sample_a_batch(su2, 40000, {44, 0}, 2, 8192, &u);
  SpectralParam lam = SpectralParam::of({{1, 1.0}});
  const auto a = empirical_cf(plain, lam);
  const auto b = empirical_cf(moved, lam);
  const double se = std::hypot(a.stderr_, b.stderr_);
  CHECK(std::abs(a.value - b.value) <= 4.0 * se);
}

TEST_CASE("selberg mc preconditions") {
  CHECK_THROWS_AS(selberg_mc_check(5, 0.5, 10, {45, 0}, 1), Error);
  // s = 0 -> exactly 1
  const auto chk = selberg_mc_check(2, 0.0, 100, {45, 1}, 1);
  CHECK(chk.estimate.value == cd(1.0));
  CHECK(chk.verdict.pass);
}
