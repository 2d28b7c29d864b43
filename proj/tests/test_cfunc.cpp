#include <cmath>

#include "doctest.h"
#include "kmlab/cfunc.hpp"
#include "kmlab/quadrature.hpp"

using namespace kmlab;

namespace {

// Independent log-Gamma oracle: recurrence to Re z >= 10, then the Stirling
// series with Bernoulli coefficients.  No code shared with the Lanczos path.
cd log_gamma_stirling(cd z) {
  cd shift = 0.0;
  while (z.real() < 10.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  static const double bern[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                1.0 / 1188, -691.0 / 360360};
  cd acc = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * 3.14159265358979323846);
  cd zp = z;
  for (double b : bern) {
    acc += b / zp;
    zp *= z * z;
  }
  return acc + shift;
}

}  // namespace

TEST_CASE("log gamma against the Stirling oracle") {
  for (cd z : {cd(1.0), cd(0.5), cd(3.0, -1.0), cd(1.0, -0.5), cd(7.3, 2.1),
               cd(0.2, 1.4)}) {
    const cd got = log_gamma(z);
    const cd want = log_gamma_stirling(z);
    CHECK(std::abs(got - want) < 1e-12 * (1.0 + std::abs(want)));
  }
  // Gamma(1/2) = sqrt(pi)
  CHECK(std::exp(log_gamma(cd(0.5))).real() ==
        doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-13));
}

TEST_CASE("c_finite_A basics") {
  SpectralParam zero;
  CHECK(c_finite_A(4, zero) == cd(1.0));
  // n = 2, lambda = (2s, 0) -> (1 - i s)^{-1}; at s = 1 -> (1+i)/2
  const double s = 1.0;
  const cd got = c_finite_A(2, SpectralParam::of({{1, 2.0 * s}}));
  CHECK(std::abs(got - cd(0.5, 0.5)) < 1e-15);
  // 1-D quadrature oracle: E[u^{-is}] over u ~ U(0,1)
  const auto re = integrate([s](double u) { return std::cos(s * std::log(u)); },
                            1e-12, 1.0, 1e-10);
  const auto im = integrate([s](double u) { return -std::sin(s * std::log(u)); },
                            1e-12, 1.0, 1e-10);
  CHECK(std::abs(got - cd(re.value, im.value)) < 1e-7);
  // n = 3 direct pair product
  SpectralParam lam = SpectralParam::of({{1, 1.0}});
  const cd expect = 1.0 / ((1.0 + cd(0.0, 0.5) * (1.0) / (1.0 - 2.0)) *
                           (1.0 + cd(0.0, 0.5) * (1.0) / (1.0 - 3.0)));
  CHECK(std::abs(c_finite_A(3, lam) - expect) < 1e-15);
}

TEST_CASE("cf evaluators are characteristic functions") {
  // conjugation symmetry and modulus bound on a real-lambda grid
  for (double t : {0.3, 1.0, 2.5}) {
    for (int n : {2, 3, 5}) {
      SpectralParam lam = SpectralParam::of({{1, t}, {2, -0.4 * t}});
      const cd f = c_finite_A(n, lam);
      const cd fc = c_finite_A(n, lam.negated());
      CHECK(std::abs(f - std::conj(fc)) < 1e-14);
      CHECK(std::abs(f) <= 1.0 + 1e-12);
    }
    for (Family fam : {Family::B, Family::C, Family::D}) {
      RootSystemSpec rs{fam, 3};
      SpectralParam lam = SpectralParam::of({{1, t}, {3, 0.6 * t}});
      const cd f = c_finite_BCD(rs, lam);
      CHECK(std::abs(f - std::conj(c_finite_BCD(rs, lam.negated()))) < 1e-14);
      CHECK(std::abs(f) <= 1.0 + 1e-12);
    }
    const cd fl = c_limit_A(SpectralParam::of({{1, t}}));
    CHECK(std::abs(fl - std::conj(c_limit_A(SpectralParam::of({{1, -t}})))) <
          1e-12);
    CHECK(std::abs(fl) <= 1.0 + 1e-12);
  }
}

TEST_CASE("c_limit_A") {
  SpectralParam zero;
  CHECK(c_limit_A(zero) == cd(1.0));
  // lambda = (2s, 0, ...): equals Gamma(1 - i s) (Weierstrass identity)
  for (double s : {0.4, 1.0, 1.7}) {
    const cd got = c_limit_A(SpectralParam::of({{1, 2.0 * s}}));
    const cd want = std::exp(log_gamma_stirling(cd(1.0, -s)));
    CHECK(std::abs(got - want) < 1e-8 * (1.0 + std::abs(want)));
  }
  // cutoff stability of the tail-completed evaluator
  SpectralParam lam = SpectralParam::of({{1, 1.0}, {2, -0.5}});
  CHECK(std::abs(c_limit_A(lam, 10000) - c_limit_A(lam, 20000)) < 1e-9);
  // raw truncation decays O(1/cutoff): doubling shrinks changes >= 1.9x
  const cd r1 = c_limit_A(lam, 2000, false);
  const cd r2 = c_limit_A(lam, 4000, false);
  const cd r4 = c_limit_A(lam, 8000, false);
  const double d12 = std::abs(r1 - r2);
  const double d24 = std::abs(r2 - r4);
  CHECK(d12 / d24 >= 1.9);
  // reduction to the Selberg product at lambda_j = 2s, j <= n
  for (int n : {2, 3}) {
    const double s = 0.6;
    SpectralParam all;
    for (int j = 1; j <= n; ++j) all.values.push_back({j, 2.0 * s});
    const cd got = c_limit_A(all);
    const cd want = selberg_gamma_ratio(n, s);
    CHECK(std::abs(got - want) < 1e-8 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("doubly infinite form") {
  SpectralParam zero;
  CHECK(c_limit_doubly_infinite(zero) == cd(1.0));
  // hand product at (N, M) = (2, 2), support {0, 1}
  SpectralParam lam = SpectralParam::of({{0, 0.8}, {1, -0.3}});
  cd hand = 1.0;
  const double l[4] = {0.0, 0.8, -0.3, 0.0};  // indices -1, 0, 1, 2
  for (int j = -1; j <= 2; ++j) {
    for (int k = j + 1; k <= 2; ++k) {
      hand /= 1.0 - cd(0.0, 0.5) * (l[k + 1] - l[j + 1]) / double(k - j);
    }
  }
  const cd got = c_doubly_infinite_finite(lam, 2, 2, false);
  CHECK(std::abs(got - hand) < 1e-14);
  // tail-completed value is window independent
  const cd a = c_doubly_infinite_finite(lam, 50, 50, true);
  const cd b = c_doubly_infinite_finite(lam, 400, 400, true);
  CHECK(std::abs(a - b) < 1e-12);
  // finite forms with the scaling prefactor approach the limit value
  const cd lim = c_limit_doubly_infinite(lam);
  const cd f3 = c_doubly_infinite_finite(lam, 1000, 1000, false);
  const cd f4 = c_doubly_infinite_finite(lam, 10000, 10000, false);
  CHECK(std::abs(f3 - lim) < 1e-3);
  CHECK(std::abs(f4 - lim) < 1e-4);
  CHECK(std::abs(f4 - lim) < std::abs(f3 - lim));
}

TEST_CASE("c_finite_BCD hand cases") {
  SpectralParam zero;
  for (Family f : {Family::B, Family::C, Family::D})
    CHECK(c_finite_BCD({f, 2}, zero) == cd(1.0));
  // type C, l = 1: single p = q = 1 factor (1 - (i/2)(2t)/2)^{-1}
  const double t = 0.9;
  const cd got = c_finite_BCD({Family::C, 1}, SpectralParam::of({{1, t}}));
  CHECK(std::abs(got - 1.0 / cd(1.0, -0.5 * t)) < 1e-15);
  // type B, l = 1: single short-root factor (1 - i t)^{-1}
  const cd gb = c_finite_BCD({Family::B, 1}, SpectralParam::of({{1, t}}));
  CHECK(std::abs(gb - 1.0 / cd(1.0, -t)) < 1e-15);
  // type D, l = 1: empty product
  CHECK(c_finite_BCD({Family::D, 1}, SpectralParam::of({{1, t}})) == cd(1.0));
}

TEST_CASE("c_weighted") {
  // s = 0 reduces to c_finite_BCD
  for (Family f : {Family::B, Family::C, Family::D}) {
    RootSystemSpec rs{f, 3};
    SpectralParam lam = SpectralParam::of({{1, 0.7}, {2, -0.2}});
    CHECK(std::abs(c_weighted(rs, lam, 0.0) - c_finite_BCD(rs, lam)) == 0.0);
  }
  // SU(2) closed form (1+s)/(1+s-it) via the 1-D quadrature oracle
  for (double s : {0.5, 1.0, 2.0}) {
    const double t = 1.0;
    const cd got = c_weighted({Family::A, 2}, SpectralParam::of({{1, 2.0 * t}}), s, 1);
    // oracle: E[u^{s-it}]/E[u^s], u ~ U(0,1)
    const auto re = integrate(
        [&](double u) { return std::pow(u, s) * std::cos(t * std::log(u)); },
        1e-14, 1.0, 1e-11);
    const auto im = integrate(
        [&](double u) { return -std::pow(u, s) * std::sin(t * std::log(u)); },
        1e-14, 1.0, 1e-11);
    const cd oracle = cd(re.value, im.value) * (1.0 + s);
    CHECK(std::abs(got - oracle) < 1e-8);
    CHECK(std::abs(got - cd(1.0 + s) / cd(1.0 + s, -t)) < 1e-14);
  }
  // the weight tilts mass toward the identity, so the CF modulus grows in s
  // (the SU(2) closed form (1+s)/|1+s-it| already shows the direction)
  RootSystemSpec rs{Family::D, 3};
  for (double t : {0.5, 1.0, 2.0}) {
    SpectralParam lam = SpectralParam::of({{1, t}, {2, 0.4 * t}});
    CHECK(std::abs(c_weighted(rs, lam, 1.0)) + 1e-14 >=
          std::abs(c_weighted(rs, lam, 0.0)));
    CHECK(std::abs(c_weighted(rs, lam, 1.0)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("selberg gamma ratio") {
  CHECK(selberg_gamma_ratio(3, 0.0) == cd(1.0));
  // n = 1: Gamma(1 - i s)
  const cd g1 = selberg_gamma_ratio(1, 0.5);
  CHECK(std::abs(g1 - std::exp(log_gamma_stirling(cd(1.0, -0.5)))) < 1e-12);
  // n = 2, s = 1: Gamma(1-i) Gamma(2-i) / Gamma(2), Stirling oracle
  const cd g2 = selberg_gamma_ratio(2, 1.0);
  const cd want = std::exp(log_gamma_stirling(cd(1.0, -1.0)) +
                           log_gamma_stirling(cd(2.0, -1.0)));
  CHECK(std::abs(g2 - want) < 1e-12);
  // reflection identity
  const cd prod = selberg_gamma_ratio(2, 0.8) * selberg_gamma_ratio(2, -0.8);
  CHECK(std::abs(prod.imag()) < 1e-13);
  CHECK(prod.real() > 0.0);
}

TEST_CASE("partition constant") {
  CHECK(partition_Z(1.0, 0.0) == 1.0);
  CHECK(partition_Z(1.0, 1.0) ==
        doctest::Approx(std::exp(kEulerGamma)).epsilon(1e-12));
  // product form vs Gamma form (tail-completed), cutoff 1e6
  for (auto [beta, k] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
    CHECK(std::abs(partition_Z_product(beta, k, 1000000) -
                   partition_Z(beta, k)) < 1e-10);
  }
  // per-mode factors all exceed 1, so Z > 1 (pins the +gamma sign)
  CHECK(partition_Z_product(1.0, 1.0, 100, true) > 1.0);
}

TEST_CASE("harish rational c-function") {
  // A1: one root, rho = alpha; mu = rho - i lambda alpha -> (1 - i lambda)^{-1}
  const std::vector<std::vector<double>> roots1 = {{1.0}};
  const std::vector<double> rho1 = {1.0};
  const double lamv = 0.7;
  const cd got = harish_c_rational(roots1, rho1, {cd(1.0, -lamv)});
  CHECK(std::abs(got - 1.0 / cd(1.0, -lamv)) < 1e-14);
  CHECK(std::abs(harish_c_rational(roots1, rho1, {cd(1.0)}) - cd(1.0)) == 0.0);
  CHECK_THROWS_AS(harish_c_rational(roots1, rho1, {cd(0.0)}), PoleHit);

  // A2 dictionary: mu = rho - i lambda reproduces c_finite_A(3, .)
  const std::vector<std::vector<double>> roots2 = {
      {1.0, -1.0, 0.0}, {0.0, 1.0, -1.0}, {1.0, 0.0, -1.0}};
  const std::vector<double> rho2 = {2.0, 0.0, -2.0};
  SpectralParam lam = SpectralParam::of({{1, 0.9}, {2, -0.3}});
  std::vector<cd> mu(3);
  const double lv[3] = {0.9, -0.3, 0.0};
  for (int i = 0; i < 3; ++i) mu[i] = cd(rho2[i], -lv[i]);
  const cd viaroots = harish_c_rational(roots2, rho2, mu);
  CHECK(std::abs(viaroots - c_finite_A(3, lam)) < 1e-12);
}
