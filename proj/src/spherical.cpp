#include "kmlab/spherical.hpp"

#include <cmath>

#include "kmlab/quadrature.hpp"

namespace kmlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

double sech_cf(double lam) { return 1.0 / std::cosh(0.5 * kPi * lam); }

double sech_cf_partial(double lam, long long N) {
  double acc = 0.0;
  for (long long n = 1; n <= N; ++n) {
    const double r = lam / (2.0 * n - 1.0);
    acc -= std::log1p(r * r);
  }
  return std::exp(acc);
}

double sech_density(double a) {
  return (2.0 / kPi) / (a * a + 1.0 / (a * a));
}

double residue_series_1_closed(double a) {
  const double x = std::pow(a, -2.0);
  return -4.0 * x * x * (2.0 - 6.0 * x * x) / std::pow(1.0 + x * x, 3.0);
}

double residue_series_2_closed(double a) {
  const double x = std::pow(a, -2.0);
  return -8.0 * x * (x * x * x - 3.0 * x) / std::pow(1.0 + x * x, 3.0);
}

double residue_series_1_partial(double a, int terms) {
  // -4 a^{-4} sum 2n(2n-1) (a^{-2})^{2n-2} (-1)^{n-1}  (the -i stripped)
  const double x = std::pow(a, -2.0);
  double acc = 0.0, sign = 1.0;
  for (int n = 1; n <= terms; ++n) {
    acc += sign * 2.0 * n * (2.0 * n - 1.0) * std::pow(x, 2.0 * n - 2.0);
    sign = -sign;
  }
  return -4.0 * x * x * acc;
}

double residue_series_2_partial(double a, int terms) {
  const double x = std::pow(a, -2.0);
  double acc = 0.0, sign = -1.0;
  for (int n = 1; n <= terms; ++n) {
    acc += sign * 2.0 * n * (2.0 * n + 1.0) * std::pow(x, 2.0 * n - 1.0);
    sign = -sign;
  }
  return -4.0 * x * acc;
}

double residue_phi(double a, int terms) {
  if (a <= 1.0) throw Error("residue_phi: requires a > 1");
  // alternating-tail bound: the n-th term of either family is bounded by
  // const n^2 x^{4n}; require the last term below 1e-12 of the head
  const double x = std::pow(a, -2.0);
  const double last =
      2.0 * terms * (2.0 * terms + 1.0) * std::pow(x, 4.0 * terms - 2.0);
  if (last > 1e-12) throw DivergenceAlarm();
  const double s1 = residue_series_1_partial(a, terms);
  const double s2 = residue_series_2_partial(a, terms);
  // phi ~ (S1 - S2)/(2 sinh(2 log a)) up to the overall positive constant
  return -(s1 - s2) / (2.0 * std::sinh(2.0 * std::log(a)));
}

double phi_closed(double a) {
  const double t = a * a + 1.0 / (a * a);
  return 1.0 / (t * t * t);
}

cd sech_harish_transform(double lam) {
  // -i (lam - i)/cos(i pi (lam - i)/2) = (lam - i)/sinh(pi lam / 2)
  const double sh = std::sinh(0.5 * kPi * lam);
  if (std::abs(sh) < 1e-300) {
    // removable against the lam^2 kernel factor; large finite placeholder
    return cd(0.0, -2.0 / (kPi * (lam == 0.0 ? 1e-300 : lam)));
  }
  return cd(lam, -1.0) / sh;
}

SphericalInverter::SphericalInverter(std::function<cd(double)> target_cf,
                                     double tol)
    : target_(std::move(target_cf)), tol_(tol) {
  // tail integrability probe
  double prev = std::abs(target_(20.0));
  for (double lam = 30.0; lam <= 60.0; lam += 10.0) {
    const double cur = std::abs(target_(lam));
    if (cur > prev + 1e-12) throw TailDivergence();
    prev = cur;
  }
  // normalization over u = 2 log a
  norm_ = 1.0;
  auto f = [this](double u) { return raw(std::exp(0.5 * u)); };
  const double z = integrate(f, -14.0, 14.0, tol_).value * 0.5;
  if (z <= 0.0) throw TailDivergence();
  norm_ = z;
}

double SphericalInverter::raw(double a) const {
  // int lam^2 Hphi(lam) (a^{2 i lam} - a^{-2 i lam})/(2 i lam sinh(2 log a)) dlam
  // even real integrand; a = 1 handled by the kernel limit -> lam
  const double u = 2.0 * std::log(a);
  auto integrand = [this, u](double lam) {
    const cd h = target_(lam);
    double kernel;
    if (std::abs(u) < 1e-9) {
      kernel = lam;
    } else {
      kernel = std::sin(lam * u) / std::sinh(u);
    }
    return (h * lam * kernel).real();
  };
  return 2.0 * integrate(integrand, 0.0, 60.0, tol_ * 1e-2).value;
}

double SphericalInverter::value(double a) const { return raw(a) / norm_; }

cd affine_c_product_probe(const std::vector<std::vector<double>>& positive_roots,
                          const std::vector<double>& rho,
                          const std::vector<double>& lam,
                          const std::vector<double>& weight, int dual_coxeter,
                          double s, double k, long long cutoff) {
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
  };
  cd log_acc = 0.0;
  const double twog = 2.0 * dual_coxeter;
  for (const auto& alpha : positive_roots) {
    const double la = dot(lam, alpha);
    const double ra = dot(rho, alpha);
    const double wa = weight.empty() ? 0.0 : dot(weight, alpha);
    // finite factor c_gdot(rho + 2 s Lambda - i lam) over +alpha
    {
      const cd f = cd(1.0 + 2.0 * s * wa / ra, -la / ra);
      if (std::abs(f) == 0.0) throw PoleHit();
      log_acc -= std::log(f);
    }
    for (long long n = 1; n <= cutoff; ++n) {
      const double den = ra + twog * n;
      const double den2 = -ra + twog * n;
      // numerator over +-alpha / denominator over +-alpha
      const cd fp = cd(1.0 + (2.0 * s * (wa + k * n)) / den, -la / den);
      const cd fm = cd(1.0 + (2.0 * s * (-wa + k * n)) / den2, la / den2);
      const cd dp = cd(1.0 + 2.0 * s * k * n / den, 0.0);
      const cd dm = cd(1.0 + 2.0 * s * k * n / den2, 0.0);
      if (std::abs(fp) == 0.0 || std::abs(fm) == 0.0) throw PoleHit();
      log_acc -= std::log(fp) + std::log(fm) - std::log(dp) - std::log(dm);
    }
    if (s == 0.0) {
      // analytic tail: pairs (1 - i la/(ra + 2g n))(1 + i la/(-ra + 2g n)),
      // n > cutoff; Gamma-ratio closed form
      const cd u1 = cd(ra, -la) / twog;   // (ra - i la)/2g
      const cd u2 = cd(-ra, la) / twog;   // (-ra + i la)/2g
      const cd w1 = cd(ra, 0.0) / twog;
      const cd w2 = cd(-ra, 0.0) / twog;
      // sum_{n>cutoff} [log(n+u1)+log(n+u2)-log(n+w1)-log(n+w2)]
      const double Md = static_cast<double>(cutoff);
      log_acc -= log_gamma(cd(Md + 1.0) + w1) + log_gamma(cd(Md + 1.0) + w2) -
                 log_gamma(cd(Md + 1.0) + u1) - log_gamma(cd(Md + 1.0) + u2);
    }
  }
  return std::exp(log_acc);
}

}  // namespace kmlab
