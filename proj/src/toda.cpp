#include "kmlab/toda.hpp"

#include <cmath>

namespace kmlab {

GeneralizedCartanMatrix GeneralizedCartanMatrix::sl(int rank_plus_one) {
  const int n = rank_plus_one - 1;
  GeneralizedCartanMatrix A;
  A.n = n;
  A.a.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    A.a[static_cast<std::size_t>(i) * n + i] = 2;
    if (i + 1 < n) {
      A.a[static_cast<std::size_t>(i) * n + i + 1] = -1;
      A.a[static_cast<std::size_t>(i + 1) * n + i] = -1;
    }
  }
  A.d.assign(n, 1.0);
  A.validate();
  return A;
}

GeneralizedCartanMatrix GeneralizedCartanMatrix::from_rows(
    const std::vector<std::vector<int>>& rows, std::vector<double> symmetrizers) {
  GeneralizedCartanMatrix A;
  A.n = static_cast<int>(rows.size());
  for (const auto& r : rows)
    for (int v : r) A.a.push_back(v);
  A.d = symmetrizers.empty() ? std::vector<double>(A.n, 1.0)
                             : std::move(symmetrizers);
  A.validate();
  return A;
}

void GeneralizedCartanMatrix::validate() const {
  for (int i = 0; i < n; ++i) {
    if (aij(i, i) != 2) throw Error("Cartan matrix: a_ii != 2");
    for (int j = 0; j < n; ++j) {
      if (i != j && aij(i, j) > 0) throw Error("Cartan matrix: a_ij > 0");
      if ((aij(i, j) == 0) != (aij(j, i) == 0))
        throw Error("Cartan matrix: zero pattern not symmetric");
      if (std::abs(d[i] * aij(i, j) - d[j] * aij(j, i)) > 1e-12)
        throw Error("Cartan matrix: not symmetrizable by d");
    }
    if (d[i] <= 0.0) throw Error("Cartan matrix: symmetrizers must be positive");
  }
}

void toda_rhs(const TodaState& s, const GeneralizedCartanMatrix& A,
              std::vector<cd>& da, std::vector<cd>& db) {
  const int n = A.n;
  da.resize(n);
  db.resize(n);
  for (int j = 0; j < n; ++j) {
    da[j] = s.b[j];
    cd acc = 0.0;
    for (int i = 0; i < n; ++i) acc += s.a[i] * static_cast<double>(A.aij(i, j));
    db[j] = -acc * s.b[j];
  }
}

cd hamiltonian_reduced(const TodaState& s, const GeneralizedCartanMatrix& A) {
  const int n = A.n;
  cd h = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h += static_cast<double>(A.aij(i, j)) / A.d[j] * s.a[i] * s.a[j];
    }
    h += 2.0 / A.d[i] * s.b[i];
  }
  return h;
}

namespace {

double state_norm(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0.0;
  for (const cd& z : a) m = std::max(m, std::abs(z));
  for (const cd& z : b) m = std::max(m, std::abs(z));
  return m;
}

constexpr double kBlowUpThreshold = 1e8;

// Dormand-Prince 5(4) on y' = dir * f(y) over sigma in [0, 1].
struct DPStepper {
  const GeneralizedCartanMatrix& A;
  cd dir;
  std::vector<cd> da, db;

  void f(const TodaState& s, std::vector<cd>& oa, std::vector<cd>& ob) {
    toda_rhs(s, A, oa, ob);
    for (auto& z : oa) z *= dir;
    for (auto& z : ob) z *= dir;
  }
};

}  // namespace

Trajectory integrate(const TodaState& s0, const GeneralizedCartanMatrix& A,
                     cd t_end, double tol) {
  if (tol < 1e-12 || tol > 1e-6) throw Error("integrate: tol in [1e-12, 1e-6]");
  static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
  static const double a21 = 1. / 5;
  static const double a31 = 3. / 40, a32 = 9. / 40;
  static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
  static const double a51 = 19372. / 6561, a52 = -25360. / 2187,
                      a53 = 64448. / 6561, a54 = -212. / 729;
  static const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247,
                      a64 = 49. / 176, a65 = -5103. / 18656;
  static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192,
                      b5 = -2187. / 6784, b6 = 11. / 84;
  static const double e1 = 35. / 384 - 5179. / 57600,
                      e3 = 500. / 1113 - 7571. / 16695,
                      e4 = 125. / 192 - 393. / 640,
                      e5 = -2187. / 6784 + 92097. / 339200,
                      e6 = 11. / 84 - 187. / 2100, e7 = -1. / 40;
  (void)c2; (void)c3; (void)c4; (void)c5;

  const int n = A.n;
  const int dim = 2 * n;
  auto pack = [n](const TodaState& s, std::vector<cd>& y) {
    y.resize(2 * n);
    for (int i = 0; i < n; ++i) {
      y[i] = s.a[i];
      y[n + i] = s.b[i];
    }
  };
  auto unpack = [n](const std::vector<cd>& y, TodaState& s) {
    s.a.assign(y.begin(), y.begin() + n);
    s.b.assign(y.begin() + n, y.end());
  };
  auto deriv = [&](const std::vector<cd>& y, std::vector<cd>& dy) {
    TodaState s;
    unpack(y, s);
    std::vector<cd> da, db;
    toda_rhs(s, A, da, db);
    dy.resize(2 * n);
    for (int i = 0; i < n; ++i) {
      dy[i] = t_end * da[i];
      dy[n + i] = t_end * db[i];
    }
  };

  Trajectory traj;
  TodaState cur = s0;
  cur.t = 0.0;
  traj.states.push_back(cur);
  const cd h0_val = hamiltonian_reduced(s0, A);

  std::vector<cd> y, k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
  pack(cur, y);
  double sigma = 0.0;
  double h = 1e-3;
  deriv(y, k1);
  int steps = 0;
  while (sigma < 1.0) {
    if (++steps > 2000000) throw Error("integrate: step limit");
    if (sigma + h > 1.0) h = 1.0 - sigma;
    auto stage = [&](std::vector<cd>& out, std::initializer_list<std::pair<const std::vector<cd>*, double>> terms) {
      out = y;
      for (auto& [kv, w] : terms)
        for (int i = 0; i < dim; ++i) out[i] += h * w * (*kv)[i];
    };
    stage(ytmp, {{&k1, a21}});
    deriv(ytmp, k2);
    stage(ytmp, {{&k1, a31}, {&k2, a32}});
    deriv(ytmp, k3);
    stage(ytmp, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
    deriv(ytmp, k4);
    stage(ytmp, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
    deriv(ytmp, k5);
    stage(ytmp, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
    deriv(ytmp, k6);
    stage(y5, {{&k1, b1}, {&k3, b3}, {&k4, b4}, {&k5, b5}, {&k6, b6}});
    deriv(y5, k7);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < dim; ++i) {
      const cd e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                        e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(e));
      scale = std::max(scale, std::abs(y5[i]));
    }
    const double tol_eff = tol * (1.0 + scale);
    if (err <= tol_eff) {
      sigma += h;
      y = y5;
      k1 = k7;  // FSAL
      TodaState s;
      unpack(y, s);
      s.t = sigma * t_end;
      if (state_norm(s.a, s.b) > kBlowUpThreshold)
        throw BlowUp(std::abs(s.t));
      traj.states.push_back(s);
      const cd hv = hamiltonian_reduced(s, A);
      traj.hamiltonian_drift =
          std::max(traj.hamiltonian_drift, std::abs(hv - h0_val));
    }
    const double fac =
        0.9 * std::pow(tol_eff / std::max(err, 1e-300), 0.2);
    h *= std::min(5.0, std::max(0.2, fac));
    if (h < 1e-14) throw BlowUp(std::abs(sigma * t_end));
  }
  return traj;
}

ComplexMatrix toda_matrix(const TodaState& s) {
  const int rank = static_cast<int>(s.a.size());
  const int n = rank + 1;
  ComplexMatrix x(n, n);
  // diag from sum a_j h_j with h_j = E_jj - E_{j+1,j+1}
  for (int i = 0; i < n; ++i) {
    cd v = 0.0;
    if (i < rank) v += s.a[i];
    if (i > 0) v -= s.a[i - 1];
    x(i, i) = v;
  }
  for (int j = 0; j < rank; ++j) {
    x(j, j + 1) = 1.0;        // eps
    x(j + 1, j) = s.b[j];     // b_j f_j
  }
  return x;
}

TodaState toda_state_from_matrix(const ComplexMatrix& x) {
  const int n = x.rows();
  TodaState s;
  s.a.resize(n - 1);
  s.b.resize(n - 1);
  cd run = 0.0;
  for (int j = 0; j < n - 1; ++j) {
    run += x(j, j);
    s.a[j] = run;  // partial sums invert diag_i = a_i - a_{i-1}
    s.b[j] = x(j + 1, j);
  }
  return s;
}

ComplexMatrix solve_by_factorization(const ComplexMatrix& x0, cd t) {
  ComplexMatrix tx = x0;
  tx *= t;
  const ComplexMatrix e = expm(tx);
  LDUFactorization f;
  try {
    f = ldu(e);
  } catch (const SingularMinor&) {
    throw StratumExit(std::abs(t));
  }
  // l^{-1} x0 l
  return matmul(solve(f.l, x0), f.l);
}

std::vector<SingularTime> singularity_scan(const TodaState& s0,
                                           const GeneralizedCartanMatrix& A,
                                           cd direction, double t_max,
                                           double tol) {
  std::vector<SingularTime> out;
  const cd dir = direction / std::abs(direction);
  double lo = 0.0;
  while (lo < t_max) {
    double hit = -1.0;
    try {
      integrate(s0, A, dir * t_max, tol);
      break;  // clean to the end
    } catch (const BlowUp& b) {
      hit = b.time;
    }
    // refine by bisection on reachability
    double a = std::max(lo, hit * 0.5), b = std::min(t_max, hit * 1.5);
    // ensure a reachable, b not
    auto reaches = [&](double r) {
      try {
        integrate(s0, A, dir * r, tol);
        return true;
      } catch (const BlowUp&) {
        return false;
      }
    };
    while (reaches(b) && b < t_max) b = std::min(t_max, b * 1.25 + 0.1);
    if (reaches(b)) break;
    while (!reaches(a) && a > 1e-6) a *= 0.5;
    if (!reaches(a)) break;
    while (b - a > 1e-6) {
      const double mid = 0.5 * (a + b);
      (reaches(mid) ? a : b) = mid;
    }
    out.push_back({dir * 0.5 * (a + b), 0.5 * (b - a) + 1e-6});
    break;  // scan reports the first singularity along the ray
  }
  return out;
}

double monodromy_probe(const TodaState& s0, const GeneralizedCartanMatrix& A,
                       cd center, double radius, double tol) {
  // reach the circle start, then integrate dy/dtheta = i r e^{i theta} f(y)
  Trajectory to_start = integrate(s0, A, center + radius, tol);
  TodaState cur = to_start.states.back();
  const TodaState start = cur;
  const int segments = 64;
  for (int sgm = 0; sgm < segments; ++sgm) {
    const double th0 = 2.0 * 3.14159265358979323846 * sgm / segments;
    const double th1 = 2.0 * 3.14159265358979323846 * (sgm + 1) / segments;
    const cd from = center + radius * std::exp(cd(0.0, th0));
    const cd to = center + radius * std::exp(cd(0.0, th1));
    // straight chord between circle points (resolution set by `segments`)
    TodaState seg0 = cur;
    seg0.t = 0.0;
    Trajectory tr = integrate(seg0, A, to - from, tol);
    cur = tr.states.back();
  }
  double mismatch = 0.0;
  for (std::size_t i = 0; i < cur.a.size(); ++i) {
    mismatch = std::max(mismatch, std::abs(cur.a[i] - start.a[i]));
    mismatch = std::max(mismatch, std::abs(cur.b[i] - start.b[i]));
  }
  return mismatch;
}

}  // namespace kmlab
