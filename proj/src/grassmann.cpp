#include "kmlab/grassmann.hpp"

#include <cmath>
#include <limits>

namespace kmlab {

namespace {

// log det of the positive-definite matrix 1 + Z*Z via Cholesky
double logdet_one_plus_ztz(const ComplexMatrix& Z) {
  const int n = Z.cols();
  ComplexMatrix h = ComplexMatrix::identity(n);
  // h = 1 + Z^* Z
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cd s = 0.0;
      for (int k = 0; k < Z.rows(); ++k) s += std::conj(Z(k, i)) * Z(k, j);
      h(i, j) += s;
    }
  }
  double logdet = 0.0;
  // in-place LL^* factorization
  for (int k = 0; k < n; ++k) {
    double d = h(k, k).real();
    for (int j = 0; j < k; ++j) d -= std::norm(h(k, j));
    if (d <= 0.0) throw Error("logdet: matrix not positive definite");
    const double rt = std::sqrt(d);
    logdet += 2.0 * std::log(rt);
    h(k, k) = rt;
    for (int i = k + 1; i < n; ++i) {
      cd s = h(i, k);
      for (int j = 0; j < k; ++j) s -= h(i, j) * std::conj(h(k, j));
      h(i, k) = s / rt;
    }
  }
  return logdet;
}

}  // namespace

double grassmann_logdensity(const ComplexMatrix& Z, int M, double s) {
  (void)M;
  return -(2.0 * M + s) * logdet_one_plus_ztz(Z);
}

ComplexMatrix sample_grassmann_invariant(int M, const StreamKey& key,
                                         std::uint64_t draw) {
  // X, Y standard complex; blocks 2k and 2k+1 of the draw: retries shift the
  // block base so resampling stays a pure function of (key, draw)
  for (std::uint32_t attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix x(M, M), y(M, M);
    std::uint32_t block = attempt * (2 * M * M);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) x(i, j) = complex_gaussian(key, draw, block++);
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) y(i, j) = complex_gaussian(key, draw, block++);
    try {
      return solve(y.transpose(), x.transpose()).transpose();  // X Y^{-1}
    } catch (const SingularBlock&) {
      continue;
    }
  }
  throw Error("sample_grassmann_invariant: retries exhausted");
}

ComplexMatrix project_corner(const ComplexMatrix& Z, int m) {
  if (m >= Z.rows()) throw Error("project_corner: require m < M");
  return Z.block(0, 0, m, m);
}

MoebiusResult moebius(const ComplexMatrix& g, const ComplexMatrix& Z) {
  const int M = Z.rows();
  const ComplexMatrix a = g.block(0, 0, M, M);
  const ComplexMatrix b = g.block(0, M, M, M);
  const ComplexMatrix c = g.block(M, 0, M, M);
  const ComplexMatrix d = g.block(M, M, M, M);
  const ComplexMatrix den = a + matmul(b, Z);
  const ComplexMatrix num = c + matmul(d, Z);
  MoebiusResult out;
  try {
    // Z' = num * den^{-1}  (solve den^T x^T = num^T)
    out.Zp = solve(den.transpose(), num.transpose()).transpose();
  } catch (const SingularBlock&) {
    throw TransversalityError();
  }
  const ComplexMatrix gi = inverse(g);
  const ComplexMatrix ai = gi.block(0, 0, M, M);
  const ComplexMatrix bi = gi.block(0, M, M, M);
  const cd det = determinant(ai + matmul(bi, Z));
  if (std::abs(det) == 0.0) throw TransversalityError();
  out.log_cocycle = std::log(std::abs(det));
  return out;
}

double mu_s_logdensity(const ComplexMatrix& g, const MuSDensitySpec& spec) {
  if (spec.s <= -1.0) throw Error("mu_s_logdensity: require s > -1");
  const int n = spec.n;
  if (std::abs(spec.r) >= n) throw Error("mu_s_logdensity: require |r| < n");
  if (g.rows() != 2 * n) throw Error("mu_s_logdensity: g must be GL(2n)");
  const int bs = n + spec.r + 1;  // indices -n..r inclusive
  double term = 0.0;
  if (spec.s != 0.0) {
    const cd minor = determinant(g.block(0, 0, bs, bs));
    const double am = std::abs(minor);
    if (am == 0.0) return -std::numeric_limits<double>::infinity();
    term = 2.0 * spec.s * std::log(am);
  }
  return term - (4.0 * n + spec.s) * logdet_one_plus_ztz(g);
}

ComplexMatrix schur_chain(const ComplexMatrix& g, int N, int n) {
  if (n >= N) throw Error("schur_chain: require n < N");
  const int m = N - n;
  const ComplexMatrix h = g.block(0, 0, m + 2 * n, m + 2 * n);
  return schur_complement(h, m);
}

ComplexMatrix schur_chain_four_maps(const ComplexMatrix& g, int N, int n) {
  if (n >= N) throw Error("schur_chain: require n < N");
  const int m = N - n;
  // Pr1: top-left (m + 2n) block
  const ComplexMatrix h = g.block(0, 0, m + 2 * n, m + 2 * n);
  // I1: invert
  const ComplexMatrix k = inverse(h);
  // Pr2: lower-right 2n block
  const ComplexMatrix b22 = k.block(m, m, 2 * n, 2 * n);
  // I2: invert back
  return inverse(b22);
}

std::vector<double> grassmann_statistics(const ComplexMatrix& z) {
  const int n = z.rows();
  std::vector<double> s;
  s.reserve(6);
  // tr[(1 + z*z)^{-1}]/n
  ComplexMatrix h = ComplexMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cd acc = 0.0;
      for (int k = 0; k < n; ++k) acc += std::conj(z(k, i)) * z(k, j);
      h(i, j) += acc;
    }
  const ComplexMatrix hinv = inverse(h);
  s.push_back(hinv.trace().real() / n);
  const double d2 = std::norm(determinant(z));
  s.push_back(d2 / (1.0 + d2));
  s.push_back(1.0 / (1.0 + std::norm(z(0, 0))));
  double f2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f2 += std::norm(z(i, j));
  s.push_back(f2 / (1.0 + f2));
  s.push_back(std::exp(-f2 / (n * n)));
  s.push_back(std::cos(std::arg(n == 1 ? z(0, 0) : determinant(z))));
  return s;
}

int grassmann_statistics_count() { return 6; }

TwoSampleCheck gaussian_schur_limit_check(int n, int N, std::uint64_t draws,
                                          const StreamKey& key, int threads) {
  if (n >= N) throw Error("gaussian_schur_limit_check: require N > n");
  struct Acc {
    std::vector<RealMeanAcc> a, b;
    void combine(const Acc& o) {
      if (a.empty()) {
        a = o.a;
        b = o.b;
        return;
      }
      if (o.a.empty()) return;
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i].combine(o.a[i]);
        b[i].combine(o.b[i]);
      }
    }
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrtN = 1.0 / std::sqrt(static_cast<double>(N));
  auto acc = run_chunked<Acc>(
      draws, 1024, threads,
      [&](Acc& a, std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        const int k = grassmann_statistics_count();
        a.a.resize(k);
        a.b.resize(k);
        for (std::uint64_t i = lo; i < hi; ++i) {
          // schur side: E|entry|^2 = 1 complex gaussian in GL(2N)
          ComplexMatrix g(2 * N, 2 * N);
          std::uint32_t block = 0;
          for (int r = 0; r < 2 * N; ++r)
            for (int c = 0; c < 2 * N; ++c)
              g(r, c) = inv_sqrt2 *
                        complex_gaussian(key.with_stream(key.stream * 2 + 1), i,
                                         block++);
          ComplexMatrix z;
          try {
            z = schur_chain(g, N, n);
          } catch (const SingularBlock&) {
            continue;
          }
          z *= cd(inv_sqrtN);
          auto sa = grassmann_statistics(z);
          for (int j = 0; j < k; ++j) a.a[j].add(sa[j]);
          // direct mu_0^{(n)} side
          ComplexMatrix w = sample_grassmann_invariant(
              2 * n, key.with_stream(key.stream * 2 + 2), i);
          auto sb = grassmann_statistics(w);
          for (int j = 0; j < k; ++j) a.b[j].add(sb[j]);
        }
      });
  TwoSampleCheck out;
  out.pass = true;
  for (std::size_t j = 0; j < acc.a.size(); ++j) {
    out.mean_a.push_back(acc.a[j].mean());
    out.mean_b.push_back(acc.b[j].mean());
    const double se = std::sqrt(acc.a[j].stderr_() * acc.a[j].stderr_() +
                                acc.b[j].stderr_() * acc.b[j].stderr_());
    const double z = std::abs(acc.a[j].mean() - acc.b[j].mean()) / se;
    out.z_scores.push_back(z);
    if (z > 4.0) out.pass = false;
  }
  return out;
}

}  // namespace kmlab
