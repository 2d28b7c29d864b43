#include <cmath>

#include "doctest.h"
#include "kmlab/looptoeplitz.hpp"

using namespace kmlab;

namespace {

LoopFourier scalar_loop(int K, const std::function<cd(int)>& modes) {
  return LoopFourier::from_modes(1, K, [&](int k) {
    ComplexMatrix m(1, 1);
    m(0, 0) = modes(k);
    return m;
  });
}

}  // namespace

TEST_CASE("toeplitz truncation hand matrices") {
  // constant loop -> identity
  const auto id = toeplitz_truncate(
      scalar_loop(0, [](int) { return cd(1.0); }), 4);
  CHECK((id.A - ComplexMatrix::identity(4)).max_abs() == 0.0);
  // g = e^{i theta}: forward shift (subdiagonal ones)
  const auto fwd = toeplitz_truncate(
      scalar_loop(1, [](int k) { return k == 1 ? cd(1.0) : cd(0.0); }), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(fwd.A(i, j) == (i == j + 1 ? cd(1.0) : cd(0.0)));
  // g = e^{-i theta}: backward shift, A*A = I - e0 e0*
  const auto bwd = toeplitz_truncate(
      scalar_loop(1, [](int k) { return k == -1 ? cd(1.0) : cd(0.0); }), 4);
  const auto prod = matmul(bwd.A.adjoint(), bwd.A);
  ComplexMatrix want = ComplexMatrix::identity(4);
  want(0, 0) = 0.0;
  CHECK((prod - want).max_abs() == 0.0);
}

TEST_CASE("hankel block") {
  // analytic loop -> zero matrix
  const auto zero = hankel_block(
      scalar_loop(2, [](int k) { return k >= 0 ? cd(0.5, 0.1) : cd(0.0); }), 4);
  CHECK(zero.max_abs() == 0.0);
  // single ghat(-1) = 1: rank one with tr C*C = 1
  const auto c = hankel_block(
      scalar_loop(1, [](int k) { return k == -1 ? cd(1.0) : cd(0.0); }), 4);
  const auto chk = hankel_trace_identity_check(
      scalar_loop(1, [](int k) { return k == -1 ? cd(1.0) : cd(0.0); }), 4);
  CHECK(c(0, 0) == cd(1.0));
  CHECK(chk.trace_c2 == 1.0);
  CHECK(chk.gap == 0.0);
  // random trig polynomial: exact identity at M >= K
  const StreamKey key{61, 0};
  const auto loop = LoopFourier::from_modes(2, 4, [&](int k) {
    ComplexMatrix m(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        m(i, j) = 0.3 * complex_gaussian(key, 0,
                                         static_cast<std::uint32_t>((k + 5) * 8 +
                                                                    2 * i + j));
    return m;
  });
  const auto chk2 = hankel_trace_identity_check(loop, 6);
  CHECK(chk2.gap < 1e-10);
}

TEST_CASE("toeplitz multiplicativity defect is corner-confined") {
  // A_M(g h) - A_M(g) A_M(h) has rank <= 2 N K for trig polynomials
  const StreamKey key{62, 0};
  const int K = 2, M = 12;
  auto mk = [&](int stream) {
    return scalar_loop(K, [&, stream](int k) {
      return 0.4 * complex_gaussian(key.with_stream(stream), 0,
                                    static_cast<std::uint32_t>(k + 4));
    });
  };
  const auto g = mk(1), h = mk(2);
  // product loop via grid sampling
  const auto gh = LoopFourier::from_sampler(
      1, 2 * K, [&](double th) { return matmul(g.eval(th), h.eval(th)); }, 512);
  const auto a_gh = toeplitz_truncate(gh, M).A;
  const auto defect = a_gh - matmul(toeplitz_truncate(g, M).A,
                                    toeplitz_truncate(h, M).A);
  const auto ev = hermitian_eigenvalues(matmul(defect.adjoint(), defect));
  int rank = 0;
  for (double v : ev)
    if (v > 1e-18) ++rank;
  CHECK(rank <= 2 * K);
}

TEST_CASE("det2 weight") {
  // analytic unitary loop: C = 0 -> weight 1
  const auto analytic = scalar_loop(0, [](int) { return cd(1.0); });
  CHECK(det2_weight(analytic, 8, 2.0) == 1.0);
  // s = 0 -> 1 regardless
  const std::vector<cd> x = {cd(0.25, 0.1)};
  const auto loop = LoopFourier::exp_abelian(x, 24);
  CHECK(det2_weight(loop, 32, 0.0) == 1.0);
  // det2 in [0, 1] for unitary loops
  const double w = det2_weight(loop, 32, 1.0);
  CHECK(w >= 0.0);
  CHECK(w <= 1.0);
  // abelian splitting: e^{-tr|C|^2} det2 = det(1 - |C|^2) -> exp(-sum n|x_n|^2)
  const auto chk = hankel_trace_identity_check(loop, 256);
  const double lhs =
      std::exp(-chk.trace_c2 + log_det2_argument(loop, 256));
  double target = 0.0;
  for (std::size_t n = 1; n <= x.size(); ++n) target += n * std::norm(x[n - 1]);
  CHECK(std::abs(lhs - std::exp(-target)) < 1e-6);
}

TEST_CASE("regularized energy and nu weight") {
  const auto analytic = scalar_loop(2, [](int k) {
    return k > 0 ? cd(0.0) : (k == 0 ? cd(1.0) : cd(0.3, -0.2));
  });
  std::vector<double> centering(24, 0.0);
  CHECK(regularized_energy(analytic, centering, 16) == 0.0);
  CHECK(nu_beta_k_logweight(analytic, 1.0, 0.0, 1, centering, 16) == 0.0);
  // weight <= e^{-s energy}: log weight <= -s energy since det2 <= 1
  const std::vector<cd> x = {cd(0.3), cd(0.1, 0.2)};
  const auto loop = LoopFourier::exp_abelian(x, 24);
  const double s = 1.0;
  const double lw = nu_beta_k_logweight(loop, 1.0, 1.0, 1, centering, 24);
  const double energy = regularized_energy(loop, centering, 24);
  CHECK(lw <= -s * energy + 1e-12);
  // self-centering: batch mean of the centered statistic is 0
  std::vector<double> emp(24, 0.0);
  for (int n = 1; n <= 24; ++n) {
    const ComplexMatrix g = loop.ghat(n);
    emp[n - 1] = std::norm(g(0, 0));
  }
  CHECK(std::abs(regularized_energy(loop, emp, 24)) < 1e-12);
}

TEST_CASE("szego identity") {
  const auto zero = szego_check({cd(0.0)}, 1.0, 16);
  CHECK(zero.operator_side == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zero.target == 1.0);
  const auto chk = szego_check({cd(0.3)}, 1.0, 256);
  CHECK(chk.gap < 1e-4);
  // raw truncated determinant approaches the square of the identity
  CHECK(std::abs(chk.raw_truncated - chk.target * chk.target) < 1e-4);
}

TEST_CASE("In kernel") {
  // n = 1: integrand is 1, I_1 = 1 - delta/pi
  for (double d : {0.05, 0.8, 2.0}) {
    CHECK(std::abs(In_kernel(1, d) - (1.0 - d / 3.14159265358979323846)) <
          1e-10);
  }
  // difference formula
  for (int n : {1, 3, 7}) {
    const double d = 0.4;
    CHECK(std::abs((In_kernel(n, d) - In_kernel(n + 1, d)) -
                   In_difference(n, d)) < 1e-9);
  }
  CHECK_THROWS_AS(In_kernel(1, 0.0), Error);
}

TEST_CASE("gaussian shift") {
  CHECK(gaussian_shift_lp(0.0, 2.0) == 0.0);
  // closed form at p = 2: e^{s^2} - 1
  for (double s : {0.3, 1.0, 2.0}) {
    CHECK(std::abs(gaussian_shift_lp(s, 2.0) - (std::exp(s * s) - 1.0)) <
          1e-9 * std::exp(s * s));
  }
  // E|t|^p sanity: p = 1 -> sqrt(2/pi), p = 2 -> 1, p = 4 -> 3
  CHECK(normal_abs_moment(1.0) ==
        doctest::Approx(std::sqrt(2.0 / 3.14159265358979323846)).epsilon(1e-12));
  CHECK(normal_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normal_abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("heat kernel basics") {
  CHECK(std::isfinite(heat_kernel_su2(0.4, 1e-12)));
  CHECK_THROWS_AS(heat_kernel_su2(0.0, 1.0), Error);
  // positivity on a grid at moderate time
  for (double th : {0.2, 1.0, 2.5, 3.0}) CHECK(heat_kernel_su2(0.5, th) > 0.0);
}

TEST_CASE("birkhoff factorization") {
  // loop reconstruction invariant of from_sampler
  const std::vector<cd> x = {cd(0.2, 0.1)};
  const auto loop = LoopFourier::exp_abelian(x, 24);
  for (double th : {0.0, 1.1, 4.4}) {
    ComplexMatrix direct(1, 1);
    direct(0, 0) = std::exp(cd(0.0, abelian_loop_eval(x, th)));
    CHECK((loop.eval(th) - direct).max_abs() < 1e-10);
  }
  // analytic loop: g_minus = I exactly, g0 = ghat(0)
  const auto analytic = scalar_loop(2, [](int k) {
    return k == 0 ? cd(1.0) : (k > 0 ? cd(0.3 / k, 0.05) : cd(0.0));
  });
  const auto f = birkhoff_factor(analytic, 16);
  CHECK(std::abs(f.g0(0, 0) - cd(1.0)) < 1e-10);
  for (int k = 1; k < 8; ++k)
    CHECK(std::abs(f.g_minus.ghat(-k)(0, 0)) < 1e-10);
  // reconstruction for a unitary abelian loop improves with M
  double r_small = 0.0, r_large = 0.0;
  for (int p = 0; p < 16; ++p) {
    const double th = 2.0 * 3.14159265358979323846 * p / 16;
    r_small = std::max(
        r_small, (loop.eval(th) - birkhoff_factor(loop, 8).eval(th)).max_abs());
    r_large = std::max(
        r_large, (loop.eval(th) - birkhoff_factor(loop, 48).eval(th)).max_abs());
  }
  CHECK(r_large < r_small + 1e-12);
  CHECK(r_large < 1e-4);
}

TEST_CASE("su2 bridge loop") {
  // the truncated Fourier series of a rough loop is not unitary; check the
  // Parseval mass instead (exact value 2 for a unitary 2x2 loop) and that
  // raising the cutoff recovers it
  auto mass = [](const LoopFourier& l) {
    double m = 0.0;
    for (int k = -l.K; k <= l.K; ++k) {
      const ComplexMatrix g = l.ghat(k);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m += std::norm(g(i, j));
    }
    return m;
  };
  const auto coarse = su2_bridge_loop(6.0, 8, 256, {63, 0}, 1);
  const auto fine = su2_bridge_loop(6.0, 64, 256, {63, 0}, 1);
  CHECK(coarse.N == 2);
  CHECK(mass(coarse) <= 2.0 + 1e-9);
  CHECK(mass(fine) <= 2.0 + 1e-9);
  CHECK(mass(fine) > mass(coarse));
  CHECK(mass(fine) > 1.9);
  // replay determinism
  const auto again = su2_bridge_loop(6.0, 8, 256, {63, 0}, 1);
  for (int k = -8; k <= 8; ++k)
    CHECK((coarse.ghat(k) - again.ghat(k)).max_abs() == 0.0);
}
