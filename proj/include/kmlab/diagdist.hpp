// Empirical side of the c-function identities: factor samples, extract
// a-coordinates (pivot moduli), form empirical characteristic functions with
// standard errors, compare against the closed forms.
//
// a-coordinate dictionary (locked by hand cases and the SO(2)/Sp(1) oracles):
//   type A: LDU diagonal, a_j = |d_j|, j = 1..n (product is 1 on SU(n));
//   types B/C/D in the quadratic-form basis: the sorted-matrix LDU diagonal
//   read at negative indices, z_j = d at index -(j-1/2) (C/D) or -j (B),
//   i.e. a_j = |d[l-j]| in 0-based sorted positions.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "kmlab/cfunc.hpp"
#include "kmlab/ensembles.hpp"
#include "kmlab/stats.hpp"

namespace kmlab {

struct ACoordinates {
  std::vector<double> a;
  GroupSpec group;
};

struct EmpiricalCF {
  cd value{0.0, 0.0};
  double stderr_ = 0.0;  // max over re/im component SEs
  std::uint64_t n_samples = 0;
  std::uint64_t n_rejected = 0;
  double ess = 0.0;  // effective sample size (weighted estimates)
};

ACoordinates a_coordinates(const ComplexMatrix& g, const GroupSpec& spec);

// Batch of per-draw log a-coordinates; rejected (off-stratum) draws hold NaN.
struct ABatch {
  GroupSpec spec;
  int a_count = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t n_rejected = 0;
  std::vector<double> logs;  // n_samples * a_count, row-major

  const double* row(std::uint64_t i) const { return logs.data() + i * a_count; }
};

// Chunk-parallel, replay-deterministic batch of samples.  `premultiply`, when
// set, left-translates every sample by a fixed group element (invariance
// batteries).
ABatch sample_a_batch(const GroupSpec& spec, std::uint64_t draws,
                      const StreamKey& key, int threads,
                      std::uint64_t chunk_size = 8192,
                      const ComplexMatrix* premultiply = nullptr);

// mean of exp(-i sum_j lam_j log a_j) over accepted draws
EmpiricalCF empirical_cf(const ABatch& batch, const SpectralParam& lam);

enum class WeightKind {
  sigma_r,    // |sigma_r|^{2s}: partial pivot product up to weight_index
  det_block,  // |det A|^{2s}: all pivots (types B/C/D, Eq. 4.6.4 weight)
};

// Self-normalized importance estimate E[a^{-i lam} w] / E[w] with the
// delta-method standard error.
EmpiricalCF empirical_cf_weighted(const ABatch& batch, const SpectralParam& lam,
                                  double s, WeightKind kind,
                                  int weight_index = 1);

struct ComparisonVerdict {
  double z = 0.0;
  bool pass = false;
};

// z = |value - ref| / stderr, pass iff z <= 4
ComparisonVerdict compare(const EmpiricalCF& e, cd reference);

struct MomentCheck {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double reference = 0.0;
  double z = 0.0;
  bool pass = false;
};

// E|sigma_r|^2 over Haar SU(n) against 1/dim(Lambda^r C^n) = 1/binom(n,r).
MomentCheck weyl_dimension_check(int n, int r, std::uint64_t draws,
                                 const StreamKey& key, int threads);

// E[det(g*g)^{-is}] over unit-variance Ginibre vs selberg_gamma_ratio(n, s).
struct SelbergCheck {
  EmpiricalCF estimate;
  cd reference;
  ComparisonVerdict verdict;
};
SelbergCheck selberg_mc_check(int n, double s, std::uint64_t draws,
                              const StreamKey& key, int threads);

}  // namespace kmlab
