// Complex Kostant-Toda system: reduced height >= -1 equations over a
// symmetrizable generalized Cartan matrix, the factorization solution for
// finite type, the conserved Hamiltonian, and pole/monodromy probes.
//
// Sign convention: db_j/dt = -b_j sum_i a_i a_ij.  The printed equations
// carry the opposite sign; the minus is forced by the factorization solution
// (sl2: a = tanh t, b = sech^2 t) and by [h_i, f_j] = -a_ij f_j.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kmlab/linalg.hpp"

namespace kmlab {

struct GeneralizedCartanMatrix {
  int n = 1;
  std::vector<int> a;       // n x n, row-major
  std::vector<double> d;    // symmetrizers, d_i a_ij = d_j a_ji

  int aij(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static GeneralizedCartanMatrix sl(int rank_plus_one);
  static GeneralizedCartanMatrix from_rows(const std::vector<std::vector<int>>& rows,
                                           std::vector<double> symmetrizers = {});
  void validate() const;
};

struct TodaState {
  std::vector<cd> a;
  std::vector<cd> b;
  cd t{0.0, 0.0};
};

// da_j = b_j, db_j = -b_j sum_i a_i a_ij
void toda_rhs(const TodaState& s, const GeneralizedCartanMatrix& A,
              std::vector<cd>& da, std::vector<cd>& db);

// Conserved quadratic form: sum_ij a_ij w_j a_i a_j + 2 sum_j w_j b_j with
// w_j = 1/d_j (the weights that make A diag(w) symmetric under the stored
// d_i a_ij = d_j a_ji convention; equal to the d_j weights whenever d = 1).
cd hamiltonian_reduced(const TodaState& s, const GeneralizedCartanMatrix& A);

struct Trajectory {
  std::vector<TodaState> states;
  double hamiltonian_drift = 0.0;
};

// Adaptive Dormand-Prince RK45 along the straight segment 0 -> t_end in
// complex time.  Throws BlowUp past ||(a,b)|| > 1e8.
Trajectory integrate(const TodaState& s0, const GeneralizedCartanMatrix& A,
                     cd t_end, double tol);

// Matrix realization in sl(n): x = eps + sum a_j h_j + sum b_j f_j
// (superdiagonal 1, diagonal from a, subdiagonal b).
ComplexMatrix toda_matrix(const TodaState& s);
TodaState toda_state_from_matrix(const ComplexMatrix& x);

// x(t) = l^{-1} x0 l where e^{t x0} = l diag u.  Throws StratumExit when the
// factorization hits a singular minor.
ComplexMatrix solve_by_factorization(const ComplexMatrix& x0, cd t);

struct SingularTime {
  cd t;
  double uncertainty;
};

// Integrate along the ray (direction) up to |t| = t_max, bisect blow-ups.
std::vector<SingularTime> singularity_scan(const TodaState& s0,
                                           const GeneralizedCartanMatrix& A,
                                           cd direction, double t_max,
                                           double tol = 1e-9);

// Integrate once around the circle center + radius e^{i theta}; returns the
// start/end state mismatch (single-valuedness probe).
double monodromy_probe(const TodaState& s0, const GeneralizedCartanMatrix& A,
                       cd center, double radius, double tol);

}  // namespace kmlab
