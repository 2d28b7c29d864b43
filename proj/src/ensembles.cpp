#include "kmlab/ensembles.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace kmlab {

namespace {

// entries laid out row-major; entry (i,j) of draw uses block i*n+j
void fill_complex_gaussian(ComplexMatrix& g, double scale, const StreamKey& key,
                           std::uint64_t draw) {
  const int n = g.rows(), m = g.cols();
  std::uint32_t block = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      g(i, j) = scale * complex_gaussian(key, draw, block++);
    }
  }
}

}  // namespace

ComplexMatrix ginibre(int n, double beta, const StreamKey& key,
                      std::uint64_t draw) {
  ComplexMatrix g(n, n);
  fill_complex_gaussian(g, 1.0 / std::sqrt(beta), key, draw);
  return g;
}

ComplexMatrix ginibre_real(int n, double sigma, const StreamKey& key,
                           std::uint64_t draw) {
  ComplexMatrix g(n, n);
  std::uint32_t block = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; j += 2) {
      double a, b;
      gaussian_pair(key, draw, block++, a, b);
      g(i, j) = sigma * a;
      if (j + 1 < n) g(i, j + 1) = sigma * b;
    }
  }
  return g;
}

ComplexMatrix haar_unitary(int n, const StreamKey& key, std::uint64_t draw) {
  ComplexMatrix g = ginibre(n, 2.0, key, draw);
  return qr_unitary(g).q;  // positive-diagonal R fixes the QR phase bias
}

ComplexMatrix haar_special_unitary(int n, const StreamKey& key,
                                   std::uint64_t draw) {
  ComplexMatrix u = haar_unitary(n, key, draw);
  const cd det = determinant(u);
  // principal n-th root of the determinant phase
  const cd root = std::exp(cd(0.0, std::arg(det) / n));
  u *= cd(1.0) / root;
  return u;
}

ComplexMatrix scaled_su(int n, double beta, const StreamKey& key,
                        std::uint64_t draw) {
  ComplexMatrix u = haar_special_unitary(n, key, draw);
  u *= cd(std::sqrt(n / beta));
  return u;
}

namespace {

ComplexMatrix haar_so(int n, const StreamKey& key, std::uint64_t draw) {
  ComplexMatrix g = ginibre_real(n, 1.0, key, draw);
  ComplexMatrix q = qr_unitary(g).q;
  if (determinant(q).real() < 0.0) {
    for (int i = 0; i < n; ++i) q(i, n - 1) = -q(i, n - 1);  // fixed reflection
  }
  return q;
}

// Compact Sp(l) inside U(2l): quaternionic Gram-Schmidt with tau(v) = Om vbar,
// Om = [[0,I],[-I,0]]; columns (c_1..c_l, -tau c_1..-tau c_l).
ComplexMatrix haar_compact_sp(int l, const StreamKey& key, std::uint64_t draw) {
  const int n = 2 * l;
  std::vector<std::vector<cd>> cols;
  std::uint32_t block = 0;
  auto tau = [l, n](const std::vector<cd>& v) {
    std::vector<cd> t(n);
    for (int i = 0; i < l; ++i) {
      t[i] = std::conj(v[l + i]);
      t[l + i] = -std::conj(v[i]);
    }
    return t;
  };
  for (int k = 0; k < l; ++k) {
    std::vector<cd> v(n);
    while (true) {
      for (int i = 0; i < n; ++i) v[i] = complex_gaussian(key, draw, block++);
      for (const auto& c : cols) {
        cd s1 = 0.0;
        for (int i = 0; i < n; ++i) s1 += std::conj(c[i]) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= s1 * c[i];
        const auto tc = tau(c);
        cd s2 = 0.0;
        for (int i = 0; i < n; ++i) s2 += std::conj(tc[i]) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= s2 * tc[i];
      }
      double nrm2 = 0.0;
      for (int i = 0; i < n; ++i) nrm2 += std::norm(v[i]);
      if (nrm2 > 1e-12) {
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& z : v) z *= inv;
        break;
      }
    }
    cols.push_back(v);
  }
  ComplexMatrix u(n, n);
  for (int k = 0; k < l; ++k) {
    const auto tc = tau(cols[k]);
    for (int i = 0; i < n; ++i) {
      u(i, k) = cols[k][i];
      u(i, l + k) = -tc[i];
    }
  }
  return u;
}

std::map<std::pair<int, int>, ComplexMatrix> g_basis_cache;
std::mutex g_basis_mutex;

}  // namespace

ComplexMatrix quadratic_form_basis_change(GroupFamily family, int l) {
  {
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    auto it = g_basis_cache.find({static_cast<int>(family), l});
    if (it != g_basis_cache.end()) return it->second;
  }
  ComplexMatrix S;
  if (family == GroupFamily::D || family == GroupFamily::B) {
    const bool odd = (family == GroupFamily::B);
    const int n = 2 * l + (odd ? 1 : 0);
    S = ComplexMatrix::zero(n, n);
    const cd c0 = std::exp(cd(0.0, -0.25 * 3.14159265358979323846)) / std::sqrt(2.0);
    for (int k = 1; k <= l; ++k) {
      const int rneg = l - k;
      const int rpos = odd ? l + k : l - 1 + k;
      const int ca = 2 * (k - 1), cb = 2 * k - 1;
      S(rneg, ca) = c0;
      S(rneg, cb) = cd(0.0, 1.0) * c0;
      S(rpos, ca) = cd(0.0, 1.0) * c0;
      S(rpos, cb) = c0;
    }
    if (odd) S(l, n - 1) = 1.0;
  } else if (family == GroupFamily::C) {
    const int n = 2 * l;
    S = ComplexMatrix::zero(n, n);
    for (int k = 1; k <= l; ++k) {
      S(l - k, k - 1) = 1.0;      // p_k -> e_{-(k-1/2)}
      S(l - 1 + k, l + k - 1) = 1.0;  // q_k -> e_{+(k-1/2)}
    }
  } else {
    throw Error("quadratic-form basis only defined for B/C/D");
  }
  std::lock_guard<std::mutex> lock(g_basis_mutex);
  return g_basis_cache.emplace(std::make_pair(static_cast<int>(family), l), S)
      .first->second;
}

ComplexMatrix paper_transpose(const ComplexMatrix& x, GroupFamily family) {
  const int n = x.rows();
  ComplexMatrix t(n, n);
  if (family == GroupFamily::C) {
    // half-integer indices -l+1/2 .. l-1/2 at positions 0..n-1
    const int l = n / 2;
    auto sign = [l](int pos) { return pos >= l ? 1.0 : -1.0; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t(i, j) = sign(i) * sign(j) * x(n - 1 - j, n - 1 - i);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) = x(n - 1 - j, n - 1 - i);
  }
  return t;
}

ComplexMatrix haar_compact(const GroupSpec& spec, const StreamKey& key,
                           std::uint64_t draw) {
  ComplexMatrix u;
  switch (spec.family) {
    case GroupFamily::A:
      return haar_special_unitary(spec.rank, key, draw);
    case GroupFamily::D:
      u = haar_so(2 * spec.rank, key, draw);
      break;
    case GroupFamily::B:
      u = haar_so(2 * spec.rank + 1, key, draw);
      break;
    case GroupFamily::C:
      u = haar_compact_sp(spec.rank, key, draw);
      break;
  }
  if (spec.basis == GroupBasis::quadratic_form) {
    const ComplexMatrix& S = quadratic_form_basis_change(spec.family, spec.rank);
    u = matmul(matmul(S, u), S.adjoint());
  }
  return u;
}

ComplexMatrix product_measure_sample(const std::vector<double>& d, int n,
                                     const StreamKey& key, std::uint64_t draw) {
  const int m = static_cast<int>(d.size());
  if (m == 0 || n > m) throw Error("product_measure_sample: need n <= |d|");
  // X, Y ~ nu_1: per-component variance 1 (standard complex gaussian)
  ComplexMatrix x(m, m), y(m, m);
  std::uint32_t block = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x(i, j) = complex_gaussian(key, draw, block++);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) y(i, j) = complex_gaussian(key, draw, block++);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) x(i, j) *= d[j];
  }
  ComplexMatrix full = matmul(x, y);
  return full.block(0, 0, n, n);
}

std::vector<cd> abelian_loop_sample(double beta, int K, const StreamKey& key,
                                    std::uint64_t draw) {
  std::vector<cd> x(K);
  for (int n = 1; n <= K; ++n) {
    // E|x_n|^2 = 1/(beta n^2): scale the standard complex gaussian by
    // 1/sqrt(2 beta n^2)
    x[n - 1] = complex_gaussian(key, draw, static_cast<std::uint32_t>(n - 1)) /
               std::sqrt(2.0 * beta) / static_cast<double>(n);
  }
  return x;
}

double abelian_loop_eval(const std::vector<cd>& x, double theta) {
  double v = 0.0;
  for (std::size_t n = 1; n <= x.size(); ++n) {
    v += 2.0 * (x[n - 1] * std::exp(cd(0.0, n * theta))).real();
  }
  return v;
}

}  // namespace kmlab
