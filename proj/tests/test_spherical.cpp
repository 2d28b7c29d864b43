#include <cmath>

#include "doctest.h"
#include "kmlab/quadrature.hpp"
#include "kmlab/spherical.hpp"

using namespace kmlab;

TEST_CASE("sech cf") {
  CHECK(sech_cf(0.0) == 1.0);
  CHECK(std::abs(sech_cf_partial(1.0, 100000) - sech_cf(1.0)) < 1e-4);
  CHECK(sech_cf(10.0) < 1e-6);
}

TEST_CASE("sech density") {
  CHECK(sech_density(1.0) ==
        doctest::Approx(1.0 / 3.14159265358979323846).epsilon(1e-14));
  // unit mass against 2 da/a (= d(2 log a), the Plancherel pairing measure)
  const auto q = integrate(
      [](double u) {
        const double a = std::exp(u);
        return 2.0 * sech_density(a);
      },
      -30.0, 30.0, 1e-10);
  CHECK(std::abs(q.value - 1.0) < 1e-8);
}

TEST_CASE("residue series closed forms") {
  const double a = 2.0;
  CHECK(std::abs(residue_series_1_partial(a, 60) - residue_series_1_closed(a)) <
        1e-10);
  CHECK(std::abs(residue_series_2_partial(a, 60) - residue_series_2_closed(a)) <
        1e-10);
  CHECK_THROWS_AS(residue_phi(0.9, 50), Error);
  CHECK_THROWS_AS(residue_phi(1.01, 2), DivergenceAlarm);
  // combined value proportional to phi_closed across a grid
  const double r0 = residue_phi(1.5, 200) / phi_closed(1.5);
  for (double av : {2.0, 3.0, 5.0}) {
    CHECK(std::abs(residue_phi(av, 200) / phi_closed(av) - r0) <
          1e-8 * std::abs(r0));
  }
}

TEST_CASE("phi closed") {
  CHECK(phi_closed(1.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  for (double a : {1.3, 2.0, 4.0})
    CHECK(phi_closed(a) == doctest::Approx(phi_closed(1.0 / a)).epsilon(1e-12));
}

TEST_CASE("spherical inverter") {
  SphericalInverter inv(sech_harish_transform, 1e-9);
  // linearity of the raw integral
  SphericalInverter inv2(
      [](double lam) { return 2.0 * sech_harish_transform(lam); }, 1e-9);
  CHECK(std::abs(inv2.raw(1.7) - 2.0 * inv.raw(1.7)) < 1e-8);
  // a = 1 finite
  CHECK(std::isfinite(inv.value(1.0)));
  // shape matches phi_closed after unit normalization
  const double z = integrate(
                       [&](double u) { return 0.5 * phi_closed(std::exp(0.5 * u)); },
                       -14.0, 14.0, 1e-11)
                       .value;
  for (double a : {1.5, 2.0, 3.0}) {
    CHECK(std::abs(inv.value(a) - phi_closed(a) / z) < 1e-6);
  }
  CHECK(std::abs(inv.value(2.0) - inv.value(0.5)) < 1e-6);
}

TEST_CASE("affine probe sl2 reduction") {
  const std::vector<std::vector<double>> roots = {{2.0}};
  const std::vector<double> rho = {1.0};
  // lambda = 0 at s = 0: unity
  const cd at0 = affine_c_product_probe(roots, rho, {0.0}, {}, 2, 0.0, 0.0, 100);
  CHECK(std::abs(at0 - cd(1.0)) < 1e-12);
  for (double lam : {0.5, 1.5}) {
    const cd probe =
        affine_c_product_probe(roots, rho, {lam}, {}, 2, 0.0, 0.0, 5000);
    CHECK(std::abs(probe - sech_cf(lam)) < 1e-6);
  }
  // cutoff-doubling stability with the analytic tails
  const cd p1 = affine_c_product_probe(roots, rho, {1.0}, {}, 2, 0.0, 0.0, 10000);
  const cd p2 = affine_c_product_probe(roots, rho, {1.0}, {}, 2, 0.0, 0.0, 20000);
  CHECK(std::abs(p1 - p2) < 1e-9);
}
