#include "kmlab/cfunc.hpp"

#include <algorithm>
#include <cmath>

namespace kmlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

cd log_gamma(cd z) {
  // Lanczos, g = 7, 9 terms
  static const double c[] = {0.99999999999980993,
                             676.5203681218851,
                             -1259.1392167224028,
                             771.32342877765313,
                             -176.61502916214059,
                             12.507343278686905,
                             -0.13857109526572012,
                             9.9843695780195716e-6,
                             1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cd x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const cd t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double digamma_real(double x) {
  // recurrence to x >= 8, then asymptotic series
  double r = 0.0;
  while (x < 8.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  return r + std::log(x) - 0.5 / x -
         f * (1.0 / 12.0 - f * (1.0 / 120.0 - f * (1.0 / 252.0 - f / 240.0)));
}

namespace detail {

cd weierstrass_tail(cd z, long long M) {
  // sum_{m>M} [log(1 - z/m) + z/m]
  //   = log Gamma(M+1) - log Gamma(M+1-z) - z psi(M+1)
  const double Md = static_cast<double>(M);
  return log_gamma(cd(Md + 1.0)) - log_gamma(cd(Md + 1.0) - z) -
         z * digamma_real(Md + 1.0);
}

cd paired_tail(cd z, long long A, long long B) {
  // sum_{m>A} log(1+z/m) + sum_{m>B} log(1-z/m)
  //   = logG(A+1) + logG(B+1) - logG(A+1+z) - logG(B+1-z)
  const double Ad = static_cast<double>(A), Bd = static_cast<double>(B);
  return log_gamma(cd(Ad + 1.0)) + log_gamma(cd(Bd + 1.0)) -
         log_gamma(cd(Ad + 1.0) + z) - log_gamma(cd(Bd + 1.0) - z);
}

}  // namespace detail

namespace {

cd inv_factor(cd f) {
  if (std::abs(f) == 0.0) throw PoleHit();
  return 1.0 / f;
}

}  // namespace

cd c_finite_A(int n, const SpectralParam& lam) {
  for (auto& e : lam.values)
    if (e.first < 1 || e.first > n)
      throw Error("c_finite_A: support outside 1..n");
  cd prod = 1.0;
  // factors are 1 unless j or k carries a nonzero lambda
  std::vector<double> l(n + 1, 0.0);
  for (auto& e : lam.values) l[e.first] = e.second;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      if (l[j] == 0.0 && l[k] == 0.0) continue;
      prod *= inv_factor(1.0 + cd(0.0, 0.5) * (l[j] - l[k]) /
                                   static_cast<double>(j - k));
    }
  }
  return prod;
}

cd c_limit_A(const SpectralParam& lam, int cutoff, bool with_tail) {
  const int J = std::max(lam.max_index(), 1);
  for (auto& e : lam.values)
    if (e.first < 1) throw Error("c_limit_A: support must be >= 1");
  long long K = cutoff > 0 ? cutoff : std::max(4 * J + 64, 256);
  if (K < J + 1) K = J + 1;

  std::vector<double> l(J + 1, 0.0);
  for (auto& e : lam.values) l[e.first] = e.second;

  // explicit pairs j < k <= K with j <= J (others contribute 0)
  cd log_prod = 0.0;
  for (int j = 1; j <= J; ++j) {
    const double lj = l[j];
    for (long long k = j + 1; k <= K; ++k) {
      const double lk = (k <= J) ? l[k] : 0.0;
      if (lj == 0.0 && lk == 0.0) continue;
      const cd f = 1.0 + cd(0.0, 0.5) * (lj - lk) / static_cast<double>(j - k);
      if (std::abs(f) == 0.0) throw PoleHit();
      log_prod += std::log(f) + cd(0.0, 0.5 * lj) / static_cast<double>(k - j);
    }
    // analytic tail over k > K: per-term log(1 - z/m) + z/m, z = (i/2) lambda_j
    if (with_tail && lj != 0.0) {
      log_prod += detail::weierstrass_tail(cd(0.0, 0.5 * lj), K - j);
    }
  }
  return std::exp(cd(0.0, 0.5 * kEulerGamma * lam.sum()) - log_prod);
}

cd c_doubly_infinite_finite(const SpectralParam& lam, int N, int M,
                            bool with_tail) {
  const int J = std::max({std::abs(lam.min_index()), std::abs(lam.max_index()), 1});
  if (N <= J || M < J)
    throw Error("c_doubly_infinite_finite: window must cover the support");
  std::vector<double> l(2 * J + 1, 0.0);
  for (auto& e : lam.values) l[e.first + J] = e.second;
  auto lv = [&](long long idx) -> double {
    return (idx >= -J && idx <= J) ? l[idx + J] : 0.0;
  };
  auto add_log = [](cd& acc, cd f) {
    if (std::abs(f) == 0.0) throw PoleHit();
    acc += std::log(f);
  };

  cd log_prod = 0.0;  // log of prod (1 - (i/2)(lam_k - lam_j)/(k-j))
  // both-support pairs, counted once
  for (int a = -J; a <= J; ++a) {
    if (lv(a) == 0.0) continue;
    for (int b = a + 1; b <= J; ++b) {
      if (lv(b) == 0.0) continue;
      add_log(log_prod,
              1.0 - cd(0.0, 0.5) * (lv(b) - lv(a)) / static_cast<double>(b - a));
    }
  }
  // support index against zero-lambda partners
  for (int s = -J; s <= J; ++s) {
    const double ls = lv(s);
    if (ls == 0.0) continue;
    for (long long k = s + 1; k <= M; ++k) {  // (j=s, k): lam_k = 0
      if (k <= J && lv(k) != 0.0) continue;
      add_log(log_prod, 1.0 + cd(0.0, 0.5) * ls / static_cast<double>(k - s));
    }
    for (long long j = -static_cast<long long>(N) + 1; j < s; ++j) {
      if (j >= -J && lv(j) != 0.0) continue;  // (j, k=s): lam_j = 0
      add_log(log_prod, 1.0 - cd(0.0, 0.5) * ls / static_cast<double>(s - j));
    }
    if (with_tail) {
      // partners k > M and j <= -N, paired for convergence
      log_prod += detail::paired_tail(cd(0.0, 0.5 * ls), M - s,
                                      s + static_cast<long long>(N) - 1);
    }
  }
  const cd prefactor =
      std::exp(cd(0.0, -0.5 * std::log(static_cast<double>(N) / M) * lam.sum()));
  return (with_tail ? cd(1.0) : prefactor) * std::exp(-log_prod);
}

cd c_limit_doubly_infinite(const SpectralParam& lam, int cutoff) {
  const int J = std::max({std::abs(lam.min_index()), std::abs(lam.max_index()), 1});
  const int K = cutoff > 0 ? std::max(cutoff, J + 1) : std::max(4 * J + 64, 256);
  return c_doubly_infinite_finite(lam, K, K, /*with_tail=*/true);
}

cd c_finite_BCD(const RootSystemSpec& spec, const SpectralParam& lam) {
  for (auto& e : lam.values)
    if (e.first < 1 || e.first > spec.rank)
      throw Error("c_finite_BCD: support outside 1..l");
  return c_weighted(spec, lam, 0.0);
}

cd c_weighted(const RootSystemSpec& spec, const SpectralParam& lam, double s,
              int weight_index) {
  const int l = spec.rank;
  std::vector<double> lv(l + 1, 0.0);
  for (auto& e : lam.values) {
    if (e.first < 1 || e.first > l) throw Error("c_weighted: support outside 1..l");
    lv[e.first] = e.second;
  }
  cd prod = 1.0;
  const cd halfi(0.0, 0.5);

  if (spec.family == Family::A) {
    // weight |sigma_r|^{2s}: denominators j-k shift by -s exactly when
    // j <= r < k
    const int r = weight_index;
    for (int j = 1; j <= l; ++j) {
      for (int k = j + 1; k <= l; ++k) {
        if (lv[j] == 0.0 && lv[k] == 0.0) continue;
        const double shift = (j <= r && r < k) ? s : 0.0;
        prod *= inv_factor(1.0 + halfi * (lv[j] - lv[k]) /
                                     (static_cast<double>(j - k) - shift));
      }
    }
    return prod;
  }

  // common difference factor, unshifted
  for (int j = 1; j <= l; ++j) {
    for (int k = j + 1; k <= l; ++k) {
      if (lv[j] == 0.0 && lv[k] == 0.0) continue;
      prod *= inv_factor(1.0 - halfi * (lv[k] - lv[j]) /
                                   static_cast<double>(k - j));
    }
  }
  switch (spec.family) {
    case Family::D:
      // sum roots: denominator (p+s)+(q+s)-2
      for (int p = 1; p <= l; ++p)
        for (int q = p + 1; q <= l; ++q) {
          if (lv[p] == 0.0 && lv[q] == 0.0) continue;
          prod *= inv_factor(1.0 - halfi * (lv[p] + lv[q]) /
                                       (p + q - 2.0 + 2.0 * s));
        }
      break;
    case Family::C:
      for (int p = 1; p <= l; ++p)
        for (int q = p; q <= l; ++q) {
          if (lv[p] == 0.0 && lv[q] == 0.0) continue;
          prod *= inv_factor(1.0 -
                             halfi * (lv[p] + lv[q]) / (p + q + 2.0 * s));
        }
      break;
    case Family::B:
      for (int p = 1; p <= l; ++p)
        for (int q = p + 1; q <= l; ++q) {
          if (lv[p] == 0.0 && lv[q] == 0.0) continue;
          prod *= inv_factor(1.0 - halfi * (lv[p] + lv[q]) /
                                       (p + q - 1.0 + 2.0 * s));
        }
      for (int r = 1; r <= l; ++r) {
        if (lv[r] == 0.0) continue;
        prod *= inv_factor(1.0 - cd(0.0, 1.0) * lv[r] / (2.0 * (r + s) - 1.0));
      }
      break;
    case Family::A:
      break;
  }
  return prod;
}

cd selberg_gamma_ratio(int n, double s) {
  cd acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    acc += log_gamma(cd(j, -s)) - log_gamma(cd(j, 0.0));
  }
  return std::exp(acc);
}

double partition_Z(double beta, double k) {
  if (k == 0.0) return 1.0;
  const double x = k / beta;
  return std::exp(log_gamma(cd(1.0 + x)).real() + kEulerGamma * x);
}

double partition_Z_product(double beta, double k, long long cutoff, bool raw) {
  const double x = k / beta;
  // compensated summation: 1e6 terms at the 1e-10 agreement tolerance
  double acc = 0.0, comp = 0.0;
  for (long long n = 1; n <= cutoff; ++n) {
    const double term = (x / n - std::log1p(x / n)) - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  if (!raw) {
    const double Md = static_cast<double>(cutoff);
    if (cutoff >= 1000) {
      // expand x/n - log(1+x/n) = sum_{j>=2} (-1)^j x^j / j n^{-j} and sum
      // the Hurwitz tails by Euler-Maclaurin; avoids the catastrophic
      // log-Gamma cancellation at large cutoffs
      double sign = 1.0, xp = x * x;
      for (int j = 2; j <= 7; ++j) {
        const double a = Md + 1.0;
        const double zeta_tail = std::pow(a, 1.0 - j) / (j - 1.0) +
                                 0.5 * std::pow(a, -double(j)) +
                                 j / 12.0 * std::pow(a, -double(j) - 1.0) -
                                 j * (j + 1.0) * (j + 2.0) / 720.0 *
                                     std::pow(a, -double(j) - 3.0);
        acc += sign * xp / j * zeta_tail;
        sign = -sign;
        xp *= x;
      }
    } else {
      // sum_{n>M} [x/n - log(1+x/n)] = logG(M+1+x) - logG(M+1) - x psi(M+1)
      acc += log_gamma(cd(Md + 1.0 + x)).real() -
             log_gamma(cd(Md + 1.0)).real() - x * digamma_real(Md + 1.0);
    }
  }
  return std::exp(acc);
}

cd harish_c_rational(const std::vector<std::vector<double>>& positive_roots,
                     const std::vector<double>& rho,
                     const std::vector<cd>& mu) {
  cd log_ratio = 0.0;
  for (const auto& alpha : positive_roots) {
    double pr = 0.0;
    cd pm = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      pr += rho[i] * alpha[i];
      pm += mu[i] * alpha[i];
    }
    if (std::abs(pm) < 1e-300 * (1.0 + std::abs(pr))) throw PoleHit();
    log_ratio += std::log(cd(pr) / pm);
  }
  return std::exp(log_ratio);
}

}  // namespace kmlab
