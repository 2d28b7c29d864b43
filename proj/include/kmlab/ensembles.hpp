// Seeded samplers for the finite-rank measures: Ginibre nu_beta, Haar on
// U/SU/SO/Sp (standard and quadratic-form bases), scaled ensembles, product
// measures nu_d, abelian loop Gaussians.
//
// Conventions (pinned by the characteristic-function contracts):
//   ginibre(n, beta):      E|g_ij|^2 = 2/beta, so E[e^{-i Re tr(x*g)}]
//                          = exp(-tr(x*x)/(2 beta)).
//   product_measure:       X diag(d) Y with X, Y ~ ginibre(., 1) (nu_1),
//                          giving the scalar CF (1 + d^2 u^2)^{-1}.
//   abelian_loop:          E|x_n|^2 = 1/(beta n^2).

#pragma once

#include <cstdint>
#include <vector>

#include "kmlab/linalg.hpp"
#include "kmlab/rng.hpp"

namespace kmlab {

enum class GroupFamily { A, B, C, D };  // SU(n), SO(2l+1), Sp(l), SO(2l)
enum class GroupBasis { standard, quadratic_form };

struct GroupSpec {
  GroupFamily family = GroupFamily::A;
  int rank = 1;  // n for SU(n); l for B/C/D
  GroupBasis basis = GroupBasis::standard;

  int matrix_size() const {
    switch (family) {
      case GroupFamily::A: return rank;
      case GroupFamily::B: return 2 * rank + 1;
      case GroupFamily::C: return 2 * rank;
      case GroupFamily::D: return 2 * rank;
    }
    return 0;
  }
  // count of a-coordinates exposed by the diagonal map
  int a_count() const { return family == GroupFamily::A ? rank : rank; }
};

// Fixed unitary change of basis: conjugation by it carries the standard
// orthogonal/symplectic form to the paper basis (epsilon_i, epsilon_j) =
// delta_0(i+j) (resp. the sign-twisted skew form), with rows sorted by
// ascending index so the Borel subgroup is upper triangular.
//   B/D:  S S^T = J (antidiagonal), per +-pair block e^{-i pi/4}/sqrt2 [[1,i],[i,1]]
//   C:    plain permutation with S^T Omega' S = [[0,I],[-I,0]]
ComplexMatrix quadratic_form_basis_change(GroupFamily family, int l);

// The paper transpose x^t: antidiagonal reflection for B/D, sign-twisted for C.
ComplexMatrix paper_transpose(const ComplexMatrix& x, GroupFamily family);

ComplexMatrix ginibre(int n, double beta, const StreamKey& key,
                      std::uint64_t draw);
ComplexMatrix ginibre_real(int n, double sigma, const StreamKey& key,
                           std::uint64_t draw);

ComplexMatrix haar_unitary(int n, const StreamKey& key, std::uint64_t draw);
ComplexMatrix haar_special_unitary(int n, const StreamKey& key,
                                   std::uint64_t draw);

// Haar on SO(2l), SO(2l+1) or compact Sp(l); basis per spec.
ComplexMatrix haar_compact(const GroupSpec& spec, const StreamKey& key,
                           std::uint64_t draw);

// (n/beta)^{1/2} * Haar SU(n)  (Prop. 2.3.1(c) regime)
ComplexMatrix scaled_su(int n, double beta, const StreamKey& key,
                        std::uint64_t draw);

// Upper-left n x n corner of X diag(d) Y, X,Y ~ nu_1 of size |d|.
ComplexMatrix product_measure_sample(const std::vector<double>& d, int n,
                                     const StreamKey& key, std::uint64_t draw);

// Abelian loop Gaussian: x_n, 1 <= n <= K, independent complex with
// E|x_n|^2 = 1/(beta n^2); the real loop is x(t) = sum x_n e^{int} + c.c.
std::vector<cd> abelian_loop_sample(double beta, int K, const StreamKey& key,
                                    std::uint64_t draw);

// Evaluate the real loop at theta from its positive-frequency coefficients.
double abelian_loop_eval(const std::vector<cd>& x, double theta);

}  // namespace kmlab
