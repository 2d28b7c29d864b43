// Rank-1 spherical analysis: the sech characteristic function and its
// density pair, the residue-series inversion, the closed-form phi, and the
// conjectural loop-group c-function product (probe only).

#pragma once

#include <functional>
#include <vector>

#include "kmlab/cfunc.hpp"

namespace kmlab {

// sech(pi lambda / 2)
double sech_cf(double lam);
// partial product prod_{n<=N} (1 + (lam/(2n-1))^2)^{-1}
double sech_cf_partial(double lam, long long N);

// (2/pi) / (a^2 + a^{-2}) against da/a
double sech_density(double a);

// combined residue series for the inversion integrand at a > 1; partial sums
// with `terms` terms of each family.  Value is proportional to phi(a).
double residue_phi(double a, int terms);
// the two printed closed forms (imaginary parts of the residue sums)
double residue_series_1_closed(double a);  // -4i a^{-4}(2-6a^{-4})/(1+a^{-4})^3
double residue_series_2_closed(double a);  // -8i a^{-2}(a^{-6}-3a^{-2})/(1+a^{-4})^3
double residue_series_1_partial(double a, int terms);
double residue_series_2_partial(double a, int terms);

// 1/(a^2 + a^{-2})^3 (up to the module normalization)
double phi_closed(double a);

// Harish transform of the sech family, Eq. (4.4.14): (lam - i)/sinh(pi lam/2)
cd sech_harish_transform(double lam);

// Rank-1 inversion integral, normalized so int phi da/a = 1.
class SphericalInverter {
 public:
  SphericalInverter(std::function<cd(double)> target_cf, double tol = 1e-9);
  double value(double a) const;   // normalized density at a
  double raw(double a) const;     // unnormalized integral

 private:
  std::function<cd(double)> target_;
  double tol_;
  double norm_ = 1.0;
};

// Conjectural affine c-function product (4.4.6)/(4.4.7), evaluated to the
// cutoff with paired-root analytic tails at s = 0.  CONJECTURAL: reported as
// data, never asserted.
cd affine_c_product_probe(const std::vector<std::vector<double>>& positive_roots,
                          const std::vector<double>& rho,
                          const std::vector<double>& lam,
                          const std::vector<double>& weight, int dual_coxeter,
                          double s, double k, long long cutoff);

}  // namespace kmlab
