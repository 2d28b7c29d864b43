// Loops as Fourier data: block Toeplitz/Hankel truncations, the
// Hilbert-Schmidt trace identity, det_2 regularization and nu_{beta,k}
// weights, the abelian Szego identity and partition constant, the I_n(delta)
// kernel, the Gaussian translation integral, the SU(2) heat kernel, and a
// truncated Birkhoff factorization.
//
// Toeplitz convention: A(g)_{ij} = ghat(i - j), so analytic loops give
// block-lower-triangular truncations (g(theta) = e^{i theta} is the forward
// shift) and the Hankel corner holds the negative frequencies,
// C_{pq} = ghat(-1-p-q).

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kmlab/ensembles.hpp"
#include "kmlab/stats.hpp"

namespace kmlab {

struct LoopFourier {
  int N = 1;  // block size
  int K = 0;  // mode cutoff
  std::vector<ComplexMatrix> coeffs;  // ghat(k), k = -K..K

  ComplexMatrix ghat(int k) const;
  ComplexMatrix eval(double theta) const;
  bool unitary_on_grid(int grid = 512, double tol = 1e-6) const;

  static LoopFourier from_modes(int N, int K,
                                const std::function<ComplexMatrix(int)>& modes);
  // Scalar loop e^{ix} from abelian coefficients (x_n)_{n>=1}; modes beyond
  // `K_out` are dropped (Bessel-decay tails).
  static LoopFourier exp_abelian(const std::vector<cd>& x, int K_out);
  // DFT of a grid sampler (trapezoid; exact to aliasing for smooth loops).
  static LoopFourier from_sampler(int N, int K_out,
                                  const std::function<ComplexMatrix(double)>& g,
                                  int grid = 4096);
};

struct ToeplitzTruncation {
  int M = 0;
  ComplexMatrix A;  // NM x NM, block (i,j) = ghat(i-j)
};

ToeplitzTruncation toeplitz_truncate(const LoopFourier& loop, int M);

// Hankel corner H+ -> H-: block (p,q) = ghat(-1-p-q), 0 <= p,q < M.
ComplexMatrix hankel_block(const LoopFourier& loop, int M);

struct HankelTraceCheck {
  double trace_c2 = 0.0;       // tr C_M^* C_M
  double sum_negative = 0.0;   // sum_n min(n, M, 2M-n) |ghat(-n)|^2_HS
  double sum_positive = 0.0;   // mirrored sum over positive frequencies
  double gap = 0.0;            // |trace_c2 - sum_negative|
};
HankelTraceCheck hankel_trace_identity_check(const LoopFourier& loop, int M);

// Eigenvalues of a Hermitian matrix (cyclic Jacobi), ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// det((1 - |C_M|^2) e^{|C_M|^2})^s with eigenvalues clamped to [0,1];
// throws ClampViolation past 1 + 1e-6.
double det2_weight(const LoopFourier& loop, int M, double s);

// log det((1 - |C_M|^2) e^{|C_M|^2}) (unpowered det_2 argument).
double log_det2_argument(const LoopFourier& loop, int M);

// sum_{n=1}^{M} n (|ghat(n)|^2_HS - centering_{n-1})
double regularized_energy(const LoopFourier& loop,
                          const std::vector<double>& centering, int M);

// -s * regularized_energy + s * log det_2, s = k/m.
double nu_beta_k_logweight(const LoopFourier& loop, double beta, double k,
                           int dynkin_m, const std::vector<double>& centering,
                           int M);

struct SzegoCheck {
  double operator_side = 0.0;   // det(1 - C_M^* C_M)^k
  double raw_truncated = 0.0;   // |det A_M|^{2k} (converges to the square)
  double target = 0.0;          // exp(-k sum n |x_n|^2)
  double gap = 0.0;             // |operator_side - target|
};
SzegoCheck szego_check(const std::vector<cd>& x, double k, int M);

struct PartitionMcCheck {
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double truncated_product = 0.0;  // K explicit modes, no tail
  double partition_z = 0.0;        // full constant (analytic tail)
  double z_score = 0.0;
};
PartitionMcCheck partition_constant_mc(double beta, double k, int K,
                                       std::uint64_t draws, const StreamKey& key,
                                       int threads);

// I_n(delta) = (2 pi n)^{-1} int_delta^{2pi-delta} |e^{in t}-1|^2/|e^{it}-1|^2 dt
double In_kernel(int n, double delta);
// closed-form difference I_n - I_{n+1}
double In_difference(int n, double delta);

// int |1 - exp(-s^2/2 + s t)|^p dPhi(t) over the standard normal
double gaussian_shift_lp(double s, double p);
// E|t|^p for the standard normal (closed form)
double normal_abs_moment(double p);

// SU(2) heat kernel at conjugacy angle theta (eigenvalues e^{+-i theta}),
// metric -tr(XY): p_t(theta) = sum_{n>=1} n e^{-(n^2-1)t/2} sin(n theta)/sin theta.
double heat_kernel_su2(double t, double theta);

struct BirkhoffFactors {
  LoopFourier g_minus;  // ghat(-k), k >= 0, ghat(0) = I
  ComplexMatrix g0;
  LoopFourier g_plus;   // ghat(k), k >= 0, ghat(0) = I
  ComplexMatrix eval(double theta) const;  // g_minus g0 g_plus at theta
};

// Block UL factorization of A_M(g) (elimination from the bottom-right);
// throws OffStratum when a diagonal block is singular.
BirkhoffFactors birkhoff_factor(const LoopFourier& loop, int M);

// Discretized SU(2) loop: Lie-algebra Brownian bridge (per-component
// variance h/beta) developed through the group, closed by the geodesic
// correction; an approximation of the Wiener loop measure, for probes only.
LoopFourier su2_bridge_loop(double beta, int K_out, int steps,
                            const StreamKey& key, std::uint64_t draw);

struct HistogramReport {
  std::vector<double> edges;      // size bins+1
  std::vector<double> mass;       // normalized weighted mass per bin
  std::vector<double> overlay;    // conjectured density mass per bin
  double median = 0.0;
};

// Weighted histogram of tr(g0* g0) under nu_{beta,k} weights, overlaid with
// the density ~ tau^{-3} sqrt(tau^2 - 4) of the limit conjecture.
HistogramReport g0_law_probe(double beta, double k, std::uint64_t draws, int M,
                             const StreamKey& key, int threads);

}  // namespace kmlab
