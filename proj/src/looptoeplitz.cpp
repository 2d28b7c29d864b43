#include "kmlab/looptoeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kmlab/cfunc.hpp"
#include "kmlab/quadrature.hpp"

namespace kmlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}  // namespace

ComplexMatrix LoopFourier::ghat(int k) const {
  if (k < -K || k > K) return ComplexMatrix::zero(N, N);
  return coeffs[static_cast<std::size_t>(k + K)];
}

ComplexMatrix LoopFourier::eval(double theta) const {
  ComplexMatrix g = ComplexMatrix::zero(N, N);
  for (int k = -K; k <= K; ++k) {
    const cd ph = std::exp(cd(0.0, k * theta));
    const ComplexMatrix& c = coeffs[static_cast<std::size_t>(k + static_cast<std::size_t>(K))];
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) g(i, j) += ph * c(i, j);
  }
  return g;
}

bool LoopFourier::unitary_on_grid(int grid, double tol) const {
  for (int p = 0; p < grid; ++p) {
    const double th = 2.0 * kPi * p / grid;
    ComplexMatrix g = eval(th);
    ComplexMatrix r = matmul(g.adjoint(), g) - ComplexMatrix::identity(N);
    if (r.max_abs() > tol) return false;
  }
  return true;
}

LoopFourier LoopFourier::from_modes(
    int N, int K, const std::function<ComplexMatrix(int)>& modes) {
  LoopFourier loop;
  loop.N = N;
  loop.K = K;
  loop.coeffs.reserve(2 * K + 1);
  for (int k = -K; k <= K; ++k) loop.coeffs.push_back(modes(k));
  return loop;
}

LoopFourier LoopFourier::from_sampler(
    int N, int K_out, const std::function<ComplexMatrix(double)>& g, int grid) {
  std::vector<ComplexMatrix> samples;
  samples.reserve(grid);
  for (int p = 0; p < grid; ++p) samples.push_back(g(2.0 * kPi * p / grid));
  return from_modes(N, K_out, [&](int k) {
    ComplexMatrix c = ComplexMatrix::zero(N, N);
    for (int p = 0; p < grid; ++p) {
      const cd ph = std::exp(cd(0.0, -k * 2.0 * kPi * p / grid)) /
                    static_cast<double>(grid);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) c(i, j) += ph * samples[p](i, j);
    }
    return c;
  });
}

LoopFourier LoopFourier::exp_abelian(const std::vector<cd>& x, int K_out) {
  return from_sampler(1, K_out, [&](double th) {
    ComplexMatrix g(1, 1);
    g(0, 0) = std::exp(cd(0.0, abelian_loop_eval(x, th)));
    return g;
  });
}

ToeplitzTruncation toeplitz_truncate(const LoopFourier& loop, int M) {
  if (M < 1) throw Error("toeplitz_truncate: M >= 1");
  const int N = loop.N;
  ToeplitzTruncation t;
  t.M = M;
  t.A = ComplexMatrix::zero(N * M, N * M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) t.A.set_block(i * N, j * N, loop.ghat(i - j));
  return t;
}

ComplexMatrix hankel_block(const LoopFourier& loop, int M) {
  const int N = loop.N;
  ComplexMatrix c = ComplexMatrix::zero(N * M, N * M);
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q) c.set_block(p * N, q * N, loop.ghat(-1 - p - q));
  return c;
}

HankelTraceCheck hankel_trace_identity_check(const LoopFourier& loop, int M) {
  HankelTraceCheck out;
  const ComplexMatrix c = hankel_block(loop, M);
  out.trace_c2 = 0.0;
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) out.trace_c2 += std::norm(c(i, j));
  for (int n = 1; n <= 2 * M - 1; ++n) {
    const double mult = std::min({n, M, 2 * M - n});
    double hs_neg = 0.0, hs_pos = 0.0;
    const ComplexMatrix gn = loop.ghat(-n);
    const ComplexMatrix gp = loop.ghat(n);
    for (int i = 0; i < loop.N; ++i)
      for (int j = 0; j < loop.N; ++j) {
        hs_neg += std::norm(gn(i, j));
        hs_pos += std::norm(gp(i, j));
      }
    out.sum_negative += mult * hs_neg;
    out.sum_positive += mult * hs_pos;
  }
  out.gap = std::abs(out.trace_c2 - out.sum_negative);
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  // real symmetric embedding [[Re, -Im], [Im, Re]]: each eigenvalue of the
  // Hermitian input appears twice; a plain real Jacobi then suffices
  const int n = h.rows();
  const int m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * m + j];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      at(i, j) = h(i, j).real();
      at(n + i, n + j) = h(i, j).real();
      at(i, n + j) = -h(i, j).imag();
      at(n + i, j) = h(i, j).imag();
    }
  }
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-24) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta =
            0.5 * std::atan2(2.0 * apq, at(p, p) - at(q, q));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int i = 0; i < m; ++i) {
          const double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip + s * aiq;
          at(i, q) = -s * aip + c * aiq;
        }
        for (int i = 0; i < m; ++i) {
          const double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api + s * aqi;
          at(q, i) = -s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> all(m);
  for (int i = 0; i < m; ++i) all[i] = at(i, i);
  std::sort(all.begin(), all.end());
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
  return ev;
}

namespace {

std::vector<double> hankel_sq_eigs(const LoopFourier& loop, int M) {
  const ComplexMatrix c = hankel_block(loop, M);
  const ComplexMatrix h = matmul(c.adjoint(), c);
  return hermitian_eigenvalues(h);
}

}  // namespace

double log_det2_argument(const LoopFourier& loop, int M) {
  auto ev = hankel_sq_eigs(loop, M);
  double acc = 0.0;
  for (double mu : ev) {
    if (mu > 1.0 + 1e-6) throw ClampViolation(mu);
    const double m = std::min(std::max(mu, 0.0), 1.0);
    if (m >= 1.0) return -std::numeric_limits<double>::infinity();
    acc += std::log1p(-m) + m;
  }
  return acc;
}

double det2_weight(const LoopFourier& loop, int M, double s) {
  if (s == 0.0) return 1.0;
  return std::exp(s * log_det2_argument(loop, M));
}

double regularized_energy(const LoopFourier& loop,
                          const std::vector<double>& centering, int M) {
  if (static_cast<int>(centering.size()) < M)
    throw Error("regularized_energy: centering shorter than M");
  double acc = 0.0;
  for (int n = 1; n <= M; ++n) {
    double hs = 0.0;
    const ComplexMatrix g = loop.ghat(n);
    for (int i = 0; i < loop.N; ++i)
      for (int j = 0; j < loop.N; ++j) hs += std::norm(g(i, j));
    acc += n * (hs - centering[n - 1]);
  }
  return acc;
}

double nu_beta_k_logweight(const LoopFourier& loop, double beta, double k,
                           int dynkin_m, const std::vector<double>& centering,
                           int M) {
  (void)beta;
  const double s = k / dynkin_m;
  if (s < 0.0) throw Error("nu_beta_k_logweight: s >= 0");
  if (s == 0.0) return 0.0;
  return -s * regularized_energy(loop, centering, M) +
         s * log_det2_argument(loop, M);
}

SzegoCheck szego_check(const std::vector<cd>& x, double k, int M) {
  SzegoCheck out;
  // modes of e^{ix} decay like Bessel tails; 4K + 32 covers them to 1e-14
  const int K_loop = std::min(4 * static_cast<int>(x.size()) + 32, 2 * M);
  const LoopFourier loop = LoopFourier::exp_abelian(x, K_loop);
  double sum_n = 0.0;
  for (std::size_t n = 1; n <= x.size(); ++n) sum_n += n * std::norm(x[n - 1]);
  out.target = std::exp(-k * sum_n);
  // operator identity side: det(A*A) = det(1 - C*C)
  const ComplexMatrix c = hankel_block(loop, M);
  const ComplexMatrix h = matmul(c.adjoint(), c);
  ComplexMatrix one_minus = ComplexMatrix::identity(h.rows()) - h;
  out.operator_side = std::pow(std::abs(determinant(one_minus)), k);
  const ToeplitzTruncation t = toeplitz_truncate(loop, M);
  out.raw_truncated = std::pow(std::norm(determinant(t.A)), k);
  out.gap = std::abs(out.operator_side - out.target);
  return out;
}

PartitionMcCheck partition_constant_mc(double beta, double k, int K,
                                       std::uint64_t draws, const StreamKey& key,
                                       int threads) {
  struct Acc {
    RealMeanAcc m;
    void combine(const Acc& o) { m.combine(o.m); }
  };
  auto acc = run_chunked<Acc>(
      draws, 8192, threads,
      [&](Acc& a, std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
          const auto x = abelian_loop_sample(beta, K, key, i);
          double s = 0.0;
          for (int n = 1; n <= K; ++n)
            s += n * (std::norm(x[n - 1]) - 1.0 / (beta * n * n));
          a.m.add(std::exp(-k * s));
        }
      });
  PartitionMcCheck out;
  out.mc_mean = acc.m.mean();
  out.mc_stderr = acc.m.stderr_();
  out.truncated_product = partition_Z_product(beta, k, K, /*raw=*/true);
  out.partition_z = partition_Z(beta, k);
  out.z_score = std::abs(out.mc_mean - out.truncated_product) / out.mc_stderr;
  return out;
}

double In_kernel(int n, double delta) {
  if (delta <= 0.0 || delta >= kPi) throw Error("In_kernel: 0 < delta < pi");
  auto f = [n](double th) {
    const double s = std::sin(0.5 * th);
    const double sn = std::sin(0.5 * n * th);
    return (sn * sn) / (s * s);
  };
  // integral magnitude ~ 2 pi n: scale the absolute tolerance accordingly
  const auto q = integrate(f, delta, 2.0 * kPi - delta, 2.0 * kPi * n * 1e-12);
  return q.value / (2.0 * kPi * n);
}

double In_difference(int n, double delta) {
  // closed form from sum_{m<=n} sin(m delta); the printed constant carries a
  // spurious 2 pi against the (2 pi n)^{-1} normalization of I_n
  return 1.0 / (kPi * n * (n + 1.0)) *
         (std::cos(0.5 * delta) - std::cos(0.5 * delta + n * delta)) /
         std::sin(0.5 * delta);
}

double gaussian_shift_lp(double s, double p) {
  if (s == 0.0) return 0.0;
  // integrand peaks near 0 and near t = p s; cover both bulks.  The value
  // grows like e^{p(p-1)s^2/2}, so the absolute tolerance follows that scale.
  const double lo = -12.0;
  const double hi = std::max(12.0, p * s + 12.0);
  const double scale = std::exp(std::min(0.5 * p * (p - 1.0) * s * s, 690.0));
  auto f = [s, p](double t) {
    const double g = 1.0 - std::exp(-0.5 * s * s + s * t);
    return std::pow(std::abs(g), p) *
           std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi);
  };
  return integrate(f, lo, hi, 1e-12 * std::max(1.0, scale)).value;
}

double normal_abs_moment(double p) {
  // E|t|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
  return std::exp((0.5 * p) * std::log(2.0) +
                  log_gamma(cd(0.5 * (p + 1.0))).real() -
                  0.5 * std::log(kPi));
}

double heat_kernel_su2(double t, double theta) {
  if (t <= 0.0) throw Error("heat_kernel_su2: t > 0");
  double acc = 0.0;
  for (int n = 1;; ++n) {
    const double coef = n * std::exp(-0.5 * (n * n - 1.0) * t);
    double chi;
    if (std::abs(std::sin(theta)) < 1e-8) {
      // theta -> 0: chi -> n;  theta -> pi: chi -> (-1)^{n-1} n
      chi = (std::cos(theta) >= 0.0 || n % 2 == 1) ? n : -n;
    } else {
      chi = std::sin(n * theta) / std::sin(theta);
    }
    acc += coef * chi;
    if (coef * n < 1e-14 * (1.0 + std::abs(acc)) && n > 3) break;
  }
  return acc;
}

namespace {

// block UL elimination from the bottom-right; A = U D L with U unit-upper,
// L unit-lower, D diagonal blocks.
struct BlockUL {
  int M, N;
  std::vector<ComplexMatrix> U, D, L;  // U,L as M x M grids (row-major)
};

BlockUL block_ul(const ComplexMatrix& A, int M, int N) {
  BlockUL f;
  f.M = M;
  f.N = N;
  f.U.assign(static_cast<std::size_t>(M) * M, ComplexMatrix());
  f.L.assign(static_cast<std::size_t>(M) * M, ComplexMatrix());
  f.D.assign(M, ComplexMatrix());
  ComplexMatrix w = A;
  auto blk = [&](int i, int j) { return w.block(i * N, j * N, N, N); };
  for (int k = M - 1; k >= 0; --k) {
    const ComplexMatrix dk = blk(k, k);
    f.D[k] = dk;
    ComplexMatrix dk_inv;
    try {
      dk_inv = inverse(dk);
    } catch (const SingularBlock&) {
      throw OffStratum(k);
    }
    for (int i = 0; i < k; ++i) {
      const ComplexMatrix uik = matmul(blk(i, k), dk_inv);
      f.U[static_cast<std::size_t>(i) * M + k] = uik;
      // row_i -= U_ik * row_k for columns j <= k
      for (int j = 0; j <= k; ++j) {
        ComplexMatrix b = blk(i, j) - matmul(uik, blk(k, j));
        w.set_block(i * N, j * N, b);
      }
    }
    for (int j = 0; j < k; ++j) {
      f.L[static_cast<std::size_t>(k) * M + j] = matmul(dk_inv, blk(k, j));
    }
  }
  return f;
}

}  // namespace

ComplexMatrix BirkhoffFactors::eval(double theta) const {
  return matmul(matmul(g_minus.eval(theta), g0), g_plus.eval(theta));
}

BirkhoffFactors birkhoff_factor(const LoopFourier& loop, int M) {
  const ToeplitzTruncation t = toeplitz_truncate(loop, M);
  const BlockUL f = block_ul(t.A, M, loop.N);
  BirkhoffFactors out;
  out.g0 = f.D[0];
  out.g_minus = LoopFourier::from_modes(loop.N, M - 1, [&](int k) {
    if (k > 0) return ComplexMatrix::zero(loop.N, loop.N);
    if (k == 0) return ComplexMatrix::identity(loop.N);
    return f.U[static_cast<std::size_t>(0) * M + (-k)];
  });
  out.g_plus = LoopFourier::from_modes(loop.N, M - 1, [&](int k) {
    if (k < 0) return ComplexMatrix::zero(loop.N, loop.N);
    if (k == 0) return ComplexMatrix::identity(loop.N);
    return f.L[static_cast<std::size_t>(k) * M + 0];
  });
  return out;
}

namespace {

// exp of i (v . sigma): cos|v| + i sin|v| (vhat . sigma)
ComplexMatrix exp_su2(double v1, double v2, double v3) {
  const double r = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
  ComplexMatrix g = ComplexMatrix::identity(2);
  if (r < 1e-300) return g;
  const double c = std::cos(r), s = std::sin(r) / r;
  // sigma_1 = [[0,1],[1,0]], sigma_2 = [[0,-i],[i,0]], sigma_3 = [[1,0],[0,-1]]
  g(0, 0) = cd(c, s * v3);
  g(0, 1) = cd(s * v2, s * v1);
  g(1, 0) = cd(-s * v2, s * v1);
  g(1, 1) = cd(c, -s * v3);
  return g;
}

// principal log of g in SU(2), returned as the (v1,v2,v3) with g = exp_su2(v)
void log_su2(const ComplexMatrix& g, double& v1, double& v2, double& v3) {
  double c = 0.5 * (g(0, 0) + g(1, 1)).real();
  c = std::min(1.0, std::max(-1.0, c));
  const double r = std::acos(c);
  const double s = std::sin(r);
  if (std::abs(s) < 1e-12) {
    v1 = v2 = v3 = 0.0;
    return;
  }
  v3 = r * (g(0, 0).imag() - g(1, 1).imag()) * 0.5 / s;
  v1 = r * (g(0, 1).imag() + g(1, 0).imag()) * 0.5 / s;
  v2 = r * (g(0, 1).real() - g(1, 0).real()) * 0.5 / s;
}

}  // namespace

LoopFourier su2_bridge_loop(double beta, int K_out, int steps,
                            const StreamKey& key, std::uint64_t draw) {
  // mean-removed Gaussian increments = algebra bridge at the grid
  const double T = 2.0 * kPi;
  const double h = T / steps;
  std::vector<double> xi(3 * steps);
  double mean[3] = {0.0, 0.0, 0.0};
  for (int j = 0; j < steps; ++j) {
    double a, b, c, dpad;
    gaussian_pair(key, draw, 2 * j, a, b);
    gaussian_pair(key, draw, 2 * j + 1, c, dpad);
    (void)dpad;
    const double sd = std::sqrt(h / beta);
    xi[3 * j] = sd * a;
    xi[3 * j + 1] = sd * b;
    xi[3 * j + 2] = sd * c;
    for (int q = 0; q < 3; ++q) mean[q] += xi[3 * j + q];
  }
  for (int q = 0; q < 3; ++q) mean[q] /= steps;
  std::vector<ComplexMatrix> path(steps + 1);
  path[0] = ComplexMatrix::identity(2);
  for (int j = 0; j < steps; ++j) {
    path[j + 1] = matmul(path[j], exp_su2(xi[3 * j] - mean[0],
                                          xi[3 * j + 1] - mean[1],
                                          xi[3 * j + 2] - mean[2]));
  }
  // close the developed loop with the geodesic correction
  double w1, w2, w3;
  log_su2(path[steps], w1, w2, w3);
  for (int j = 0; j <= steps; ++j) {
    const double frac = static_cast<double>(j) / steps;
    path[j] = matmul(path[j], exp_su2(-frac * w1, -frac * w2, -frac * w3));
  }
  // DFT of the grid samples
  LoopFourier loop;
  loop.N = 2;
  loop.K = K_out;
  loop.coeffs.assign(2 * K_out + 1, ComplexMatrix::zero(2, 2));
  for (int k = -K_out; k <= K_out; ++k) {
    ComplexMatrix& c = loop.coeffs[static_cast<std::size_t>(k + K_out)];
    for (int j = 0; j < steps; ++j) {
      const cd ph =
          std::exp(cd(0.0, -k * 2.0 * kPi * j / steps)) / static_cast<double>(steps);
      for (int r = 0; r < 2; ++r)
        for (int cc = 0; cc < 2; ++cc) c(r, cc) += ph * path[j](r, cc);
    }
  }
  return loop;
}

HistogramReport g0_law_probe(double beta, double k, std::uint64_t draws, int M,
                             const StreamKey& key, int threads) {
  const int K_out = std::max(8, M / 2);
  const int steps = 1 << 10;
  // centering constants from a fixed-seed pre-pass
  std::vector<double> centering(M, 0.0);
  {
    const StreamKey pre = key.with_stream(key.stream + 7777);
    const std::uint64_t pre_draws = 64;
    for (std::uint64_t i = 0; i < pre_draws; ++i) {
      const LoopFourier loop = su2_bridge_loop(beta, K_out, steps, pre, i);
      for (int n = 1; n <= M; ++n) {
        double hs = 0.0;
        const ComplexMatrix g = loop.ghat(n);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) hs += std::norm(g(r, c));
        centering[n - 1] += hs / pre_draws;
      }
    }
  }
  struct Acc {
    std::vector<double> tau;
    std::vector<double> w;
    void combine(const Acc& o) {
      tau.insert(tau.end(), o.tau.begin(), o.tau.end());
      w.insert(w.end(), o.w.begin(), o.w.end());
    }
  };
  auto acc = run_chunked<Acc>(
      draws, 64, threads,
      [&](Acc& a, std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
          const LoopFourier loop = su2_bridge_loop(beta, K_out, steps, key, i);
          try {
            const BirkhoffFactors f = birkhoff_factor(loop, M);
            const double tau =
                matmul(f.g0.adjoint(), f.g0).trace().real();
            const double lw =
                nu_beta_k_logweight(loop, beta, k, 1, centering, M);
            a.tau.push_back(tau);
            a.w.push_back(std::exp(lw));
          } catch (const Error&) {
            continue;  // off-stratum or clamp violation: skip, probe only
          }
        }
      });
  HistogramReport rep;
  const int bins = 40;
  double tmax = 2.0;
  for (double t : acc.tau) tmax = std::max(tmax, t);
  tmax = std::min(tmax, 50.0);
  rep.edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b)
    rep.edges[b] = 2.0 + (tmax - 2.0) * b / bins;
  rep.mass.assign(bins, 0.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < acc.tau.size(); ++i) {
    const int b = std::min(
        bins - 1, static_cast<int>((acc.tau[i] - 2.0) / (tmax - 2.0) * bins));
    if (b >= 0) rep.mass[b] += acc.w[i];
    wsum += acc.w[i];
  }
  if (wsum > 0)
    for (double& m : rep.mass) m /= wsum;
  // weighted median
  double run = 0.0;
  for (int b = 0; b < bins; ++b) {
    run += rep.mass[b];
    if (run >= 0.5) {
      rep.median = 0.5 * (rep.edges[b] + rep.edges[b + 1]);
      break;
    }
  }
  // conjecture overlay: density ~ tau^{-3} sqrt(tau^2 - 4) on [2, inf)
  rep.overlay.assign(bins, 0.0);
  double norm = 0.0;
  for (int b = 0; b < bins; ++b) {
    auto f = [](double tau) {
      return std::pow(tau, -3.0) * std::sqrt(std::max(0.0, tau * tau - 4.0));
    };
    rep.overlay[b] = integrate(f, rep.edges[b], rep.edges[b + 1], 1e-10).value;
    norm += rep.overlay[b];
  }
  // account for mass beyond tmax
  const double tail = integrate(
      [](double u) {
        const double tau = 1.0 / u;  // u = 1/tau
        return std::pow(tau, -3.0) *
               std::sqrt(std::max(0.0, tau * tau - 4.0)) * tau * tau;
      },
      1e-9, 1.0 / tmax, 1e-10).value;
  norm += tail;
  if (norm > 0)
    for (double& m : rep.overlay) m /= norm;
  return rep;
}

}  // namespace kmlab
