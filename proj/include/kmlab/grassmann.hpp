// Graph-coordinate Grassmannian measures: invariant density, exact sampler,
// projection coherence, Moebius quasi-invariance cocycle, and the mu_s
// density with its four-map Schur projection chain.

#pragma once

#include <cstdint>

#include "kmlab/ensembles.hpp"
#include "kmlab/stats.hpp"

namespace kmlab {

struct GraphCoordinate {
  ComplexMatrix Z;
};

struct MuSDensitySpec {
  int n = 1;   // matrices live in GL(2n)
  int r = 0;   // pivot index, |r| < n
  double s = 0.0;  // > -1
};

// -(2M + s) log det(1 + Z*Z), via Cholesky of the positive matrix.
double grassmann_logdensity(const ComplexMatrix& Z, int M, double s);

// Z = X Y^{-1}, X, Y independent standard complex Ginibre (invariant law on
// Gr(M, C^{2M}) in the graph chart).  Bounded retries when Y is singular.
ComplexMatrix sample_grassmann_invariant(int M, const StreamKey& key,
                                         std::uint64_t draw);

// Upper-left m x m corner (m < M).
ComplexMatrix project_corner(const ComplexMatrix& Z, int m);

struct MoebiusResult {
  ComplexMatrix Zp;       // (c + dZ)(a + bZ)^{-1}
  double log_cocycle;     // log |det(a(g^{-1}) + b(g^{-1}) Z)|
};

// Linear fractional action of g = [[a,b],[c,d]] on the graph {(x, Zx)}.
MoebiusResult moebius(const ComplexMatrix& g, const ComplexMatrix& Z);

// 2s log|det A^{(r)}(g)| - (4n + s) log det(1 + g*g); the pivot block
// A^{(r)} spans rows/cols of index -n..r (inclusive) in the sorted order.
double mu_s_logdensity(const ComplexMatrix& g, const MuSDensitySpec& spec);

// Center Schur complement a22 - a21 a11^{-1} a12 with the (m, 2n, m) block
// splitting, m = N - n.
ComplexMatrix schur_chain(const ComplexMatrix& g, int N, int n);

// Same projection through the four-map composition Pr1, I1, Pr2, I2.
ComplexMatrix schur_chain_four_maps(const ComplexMatrix& g, int N, int n);

// Bounded statistics battery shared by the pushforward/limit checks.
std::vector<double> grassmann_statistics(const ComplexMatrix& z);
int grassmann_statistics_count();

struct TwoSampleCheck {
  std::vector<double> mean_a, mean_b, z_scores;
  bool pass = false;  // all |z| <= 4
};

// N^{-1/2} (a22 - a21 a11^{-1} a12) over unit-second-moment complex Gaussian
// g in GL(2N), against direct mu_0^{(n)} samples (graph sampler with M = 2n).
TwoSampleCheck gaussian_schur_limit_check(int n, int N, std::uint64_t draws,
                                          const StreamKey& key, int threads);

}  // namespace kmlab
