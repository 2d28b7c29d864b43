#include "kmlab/diagdist.hpp"

#include <cmath>
#include <limits>

namespace kmlab {

ACoordinates a_coordinates(const ComplexMatrix& g, const GroupSpec& spec) {
  ACoordinates out;
  out.group = spec;
  std::vector<cd> d;
  try {
    d = ldu(g).d;
  } catch (const SingularMinor& e) {
    throw OffStratum(e.index);
  }
  const int l = spec.rank;
  if (spec.family == GroupFamily::A) {
    out.a.resize(l);
    for (int j = 0; j < l; ++j) out.a[j] = std::abs(d[j]);
  } else {
    if (spec.basis != GroupBasis::quadratic_form)
      throw Error("a_coordinates: B/C/D requires the quadratic-form basis");
    // z_j sits at sorted position l - j
    out.a.resize(l);
    for (int j = 1; j <= l; ++j) out.a[j - 1] = std::abs(d[l - j]);
  }
  return out;
}

ABatch sample_a_batch(const GroupSpec& spec, std::uint64_t draws,
                      const StreamKey& key, int threads,
                      std::uint64_t chunk_size, const ComplexMatrix* premultiply) {
  ABatch batch;
  batch.spec = spec;
  batch.a_count = spec.a_count();
  batch.n_samples = draws;
  batch.logs.assign(draws * batch.a_count,
                    std::numeric_limits<double>::quiet_NaN());

  struct RejAcc {
    std::uint64_t rejected = 0;
    void combine(const RejAcc& o) { rejected += o.rejected; }
  };
  auto acc = run_chunked<RejAcc>(
      draws, chunk_size, threads,
      [&](RejAcc& a, std::uint64_t, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
          ComplexMatrix g = haar_compact(spec, key, i);
          if (premultiply) g = matmul(*premultiply, g);
          try {
            ACoordinates ac = a_coordinates(g, spec);
            double* row = batch.logs.data() + i * batch.a_count;
            for (int j = 0; j < batch.a_count; ++j) row[j] = std::log(ac.a[j]);
          } catch (const OffStratum&) {
            ++a.rejected;
          }
        }
      });
  batch.n_rejected = acc.rejected;
  return batch;
}

namespace {

bool row_ok(const double* row, int k) {
  for (int j = 0; j < k; ++j)
    if (std::isnan(row[j])) return false;
  return true;
}

void check_reliability(EmpiricalCF& e) {
  if (e.n_samples == 0 ||
      static_cast<double>(e.n_rejected) >=
          0.01 * static_cast<double>(e.n_samples + e.n_rejected)) {
    throw Unreliable("off-stratum rejection rate >= 1%");
  }
}

}  // namespace

EmpiricalCF empirical_cf(const ABatch& batch, const SpectralParam& lam) {
  std::vector<double> lv(batch.a_count, 0.0);
  for (auto& e : lam.values) {
    if (e.first < 1 || e.first > batch.a_count)
      throw Error("empirical_cf: lambda support outside the group rank");
    lv[e.first - 1] = e.second;
  }
  ComplexMeanAcc acc;
  for (std::uint64_t i = 0; i < batch.n_samples; ++i) {
    const double* row = batch.row(i);
    if (!row_ok(row, batch.a_count)) continue;
    double phase = 0.0;
    for (int j = 0; j < batch.a_count; ++j) phase += lv[j] * row[j];
    acc.add(std::exp(cd(0.0, -phase)));
  }
  EmpiricalCF out;
  out.value = acc.mean();
  out.stderr_ = acc.stderr_max();
  out.n_samples = acc.n;
  out.n_rejected = batch.n_rejected;
  out.ess = static_cast<double>(acc.n);
  check_reliability(out);
  return out;
}

EmpiricalCF empirical_cf_weighted(const ABatch& batch, const SpectralParam& lam,
                                  double s, WeightKind kind, int weight_index) {
  std::vector<double> lv(batch.a_count, 0.0);
  for (auto& e : lam.values) {
    if (e.first < 1 || e.first > batch.a_count)
      throw Error("empirical_cf_weighted: lambda support outside rank");
    lv[e.first - 1] = e.second;
  }
  const int r = (kind == WeightKind::det_block) ? batch.a_count : weight_index;
  // two passes: plain accumulation, then delta-method residual variance
  double sum_w = 0.0, sum_w2 = 0.0;
  cd sum_pw = 0.0;
  std::uint64_t n = 0;
  for (std::uint64_t i = 0; i < batch.n_samples; ++i) {
    const double* row = batch.row(i);
    if (!row_ok(row, batch.a_count)) continue;
    double logw = 0.0;
    for (int j = 0; j < r; ++j) logw += row[j];
    const double w = std::exp(2.0 * s * logw);
    double phase = 0.0;
    for (int j = 0; j < batch.a_count; ++j) phase += lv[j] * row[j];
    sum_w += w;
    sum_w2 += w * w;
    sum_pw += w * std::exp(cd(0.0, -phase));
    ++n;
  }
  EmpiricalCF out;
  out.n_samples = n;
  out.n_rejected = batch.n_rejected;
  if (n == 0 || sum_w <= 0.0) throw Unreliable("no weighted samples");
  const cd ratio = sum_pw / sum_w;
  out.value = ratio;
  out.ess = sum_w * sum_w / sum_w2;
  if (out.ess < 0.01 * static_cast<double>(n))
    throw Unreliable("weighted effective sample size below 1%");
  // Var(R) ~ sum (w_i (ph_i - R))^2 / (sum w)^2, per component
  double var_re = 0.0, var_im = 0.0;
  for (std::uint64_t i = 0; i < batch.n_samples; ++i) {
    const double* row = batch.row(i);
    if (!row_ok(row, batch.a_count)) continue;
    double logw = 0.0;
    for (int j = 0; j < r; ++j) logw += row[j];
    const double w = std::exp(2.0 * s * logw);
    double phase = 0.0;
    for (int j = 0; j < batch.a_count; ++j) phase += lv[j] * row[j];
    const cd res = w * (std::exp(cd(0.0, -phase)) - ratio);
    var_re += res.real() * res.real();
    var_im += res.imag() * res.imag();
  }
  out.stderr_ = std::sqrt(std::max(var_re, var_im)) / sum_w;
  check_reliability(out);
  return out;
}

ComparisonVerdict compare(const EmpiricalCF& e, cd reference) {
  ComparisonVerdict v;
  const double diff = std::abs(e.value - reference);
  if (e.stderr_ > 0.0) {
    v.z = diff / e.stderr_;
    v.pass = v.z <= 4.0;
  } else {
    v.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    v.pass = diff == 0.0;
  }
  return v;
}

MomentCheck weyl_dimension_check(int n, int r, std::uint64_t draws,
                                 const StreamKey& key, int threads) {
  struct Acc {
    RealMeanAcc m;
    void combine(const Acc& o) { m.combine(o.m); }
  };
  auto acc = run_chunked<Acc>(
      draws, 8192, threads,
      [&](Acc& a, std::uint64_t, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
          ComplexMatrix g = haar_special_unitary(n, key, i);
          const cd minor = determinant(g.block(0, 0, r, r));
          a.m.add(std::norm(minor));
        }
      });
  MomentCheck out;
  out.estimate = acc.m.mean();
  out.stderr_ = acc.m.stderr_();
  double binom = 1.0;
  for (int i = 0; i < r; ++i) binom = binom * (n - i) / (i + 1);
  out.reference = 1.0 / binom;
  out.z = std::abs(out.estimate - out.reference) / out.stderr_;
  out.pass = out.z <= 4.0;
  return out;
}

SelbergCheck selberg_mc_check(int n, double s, std::uint64_t draws,
                              const StreamKey& key, int threads) {
  if (n > 4) throw Error("selberg_mc_check: n <= 4");
  struct Acc {
    ComplexMeanAcc m;
    void combine(const Acc& o) { m.combine(o.m); }
  };
  auto acc = run_chunked<Acc>(
      draws, 8192, threads,
      [&](Acc& a, std::uint64_t, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
          // unit-variance entries: E|g_ij|^2 = 1 (beta = 2 convention)
          ComplexMatrix g = ginibre(n, 2.0, key, i);
          const double logdet2 = 2.0 * std::log(std::abs(determinant(g)));
          a.m.add(std::exp(cd(0.0, -s * logdet2)));
        }
      });
  SelbergCheck out;
  out.estimate.value = acc.m.mean();
  out.estimate.stderr_ = acc.m.stderr_max();
  out.estimate.n_samples = acc.m.n;
  out.reference = selberg_gamma_ratio(n, s);
  out.verdict = compare(out.estimate, out.reference);
  return out;
}

}  // namespace kmlab
