#include "kmlab/suites.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "kmlab/diagdist.hpp"
#include "kmlab/grassmann.hpp"
#include "kmlab/looptoeplitz.hpp"
#include "kmlab/quadrature.hpp"
#include "kmlab/simd/kernels.hpp"
#include "kmlab/spherical.hpp"
#include "kmlab/toda.hpp"

namespace kmlab {

const char* kVersion = "kmlab 0.1.0";

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

std::string pjson(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [k, v] : kv) {
    if (!first) os << ",";
    first = false;
    os << "\"" << k << "\":" << format_double(v);
  }
  os << "}";
  return os.str();
}

CheckRecord cf_check(const std::string& name, const std::string& params,
                     const EmpiricalCF& e, cd reference) {
  CheckRecord r;
  r.name = name;
  r.param_json = params;
  r.estimate = e.value;
  r.reference = reference;
  r.stderr_ = e.stderr_;
  const auto v = compare(e, reference);
  r.score = v.z;
  r.verdict = v.pass ? Verdict::pass : Verdict::fail;
  return r;
}

CheckRecord z_check(const std::string& name, const std::string& params,
                    double estimate, double reference, double se) {
  CheckRecord r;
  r.name = name;
  r.param_json = params;
  r.estimate = estimate;
  r.reference = reference;
  r.stderr_ = se;
  r.score = se > 0 ? std::abs(estimate - reference) / se
                   : (estimate == reference ? 0.0 : 1e300);
  r.verdict = r.score <= 4.0 ? Verdict::pass : Verdict::fail;
  return r;
}

CheckRecord gap_check(const std::string& name, const std::string& params,
                      cd estimate, cd reference, double tol) {
  CheckRecord r;
  r.name = name;
  r.param_json = params;
  r.estimate = estimate;
  r.reference = reference;
  r.score = std::abs(estimate - reference);
  r.verdict = r.score <= tol ? Verdict::pass : Verdict::fail;
  return r;
}

CheckRecord bool_check(const std::string& name, const std::string& params,
                       bool ok, double score) {
  CheckRecord r;
  r.name = name;
  r.param_json = params;
  r.estimate = ok ? 1.0 : 0.0;
  r.reference = 1.0;
  r.score = score;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

CheckRecord exploratory(const std::string& name, const std::string& params,
                        cd estimate, const std::string& note = "") {
  CheckRecord r;
  r.name = name;
  r.param_json = params;
  r.estimate = estimate;
  r.verdict = Verdict::exploratory;
  r.note = note;
  return r;
}

CheckRecord ks_record(const std::string& name, const std::string& params,
                      double ks, double threshold) {
  CheckRecord r;
  r.name = name;
  r.param_json = params;
  r.estimate = ks;
  r.reference = threshold;
  r.score = ks;
  r.verdict = ks < threshold ? Verdict::pass : Verdict::fail;
  return r;
}

std::vector<SpectralParam> lambda_grid_A(int n, int count) {
  std::vector<SpectralParam> out;
  const double scales[] = {0.5, 1.0, 2.0, 0.75, 1.5};
  int si = 0;
  while (static_cast<int>(out.size()) < count) {
    const double c = scales[si % 5];
    SpectralParam p;
    switch (si % 4) {
      case 0: p.values = {{1, c}}; break;
      case 1: p.values = {{1, c}, {2, -c}}; break;
      case 2: p.values = {{1, c}, {2, 0.5 * c}}; break;
      default:
        if (n >= 3) p.values = {{1, c}, {3, -0.5 * c}};
        else p.values = {{2, c}};
        break;
    }
    out.push_back(p);
    ++si;
  }
  return out;
}

std::vector<SpectralParam> lambda_grid_BCD(int l, int count) {
  std::vector<SpectralParam> out;
  const double scales[] = {0.5, 1.0, 1.5};
  int si = 0;
  while (static_cast<int>(out.size()) < count) {
    const double c = scales[si % 3];
    SpectralParam p;
    if (si % 2 == 0) p.values = {{1, c}};
    else p.values = {{1, c}, {std::min(2, l), 0.7 * c}};
    out.push_back(p);
    ++si;
  }
  return out;
}

std::string lam_json(const SpectralParam& lam, double extra = 0.0,
                     const char* extra_name = nullptr) {
  std::ostringstream os;
  os << "{\"lambda\":[";
  bool first = true;
  for (auto& e : lam.values) {
    if (!first) os << ",";
    first = false;
    os << "[" << e.first << "," << format_double(e.second) << "]";
  }
  os << "]";
  if (extra_name) os << ",\"" << extra_name << "\":" << format_double(extra);
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------- diag-A ---

SuiteReport suite_diag_A(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "diag-A";
  const std::uint64_t draws = cfg.draws ? cfg.draws : 1000000;
  std::uint64_t rejected = 0;
  for (int n : {2, 3, 4}) {
    GroupSpec spec{GroupFamily::A, n, GroupBasis::standard};
    const StreamKey key{cfg.seed, static_cast<std::uint64_t>(n)};
    ABatch batch = sample_a_batch(spec, draws, key, cfg.threads);
    rejected += batch.n_rejected;
    for (const auto& lam : lambda_grid_A(n, 10)) {
      rep.add(cf_check("su" + std::to_string(n) + "_cf", lam_json(lam, n, "n"),
                       empirical_cf(batch, lam), c_finite_A(n, lam)));
    }
  }
  const double rej_rate = static_cast<double>(rejected) / (3.0 * draws);
  rep.add(bool_check("off_stratum_rate", "{}", rej_rate < 1e-3, rej_rate));
  return rep;
}

// -------------------------------------------------------------- diag-BCD ---

SuiteReport suite_diag_BCD(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "diag-BCD";
  const std::uint64_t draws = cfg.draws ? cfg.draws : 1000000;
  struct Row {
    GroupFamily gf;
    Family cf;
    const char* name;
  };
  const Row rows[] = {{GroupFamily::D, Family::D, "so4"},
                      {GroupFamily::B, Family::B, "so5"},
                      {GroupFamily::C, Family::C, "sp2"}};
  int stream = 100;
  for (const auto& row : rows) {
    GroupSpec spec{row.gf, 2, GroupBasis::quadratic_form};
    RootSystemSpec rs{row.cf, 2};
    const StreamKey key{cfg.seed, static_cast<std::uint64_t>(stream++)};
    ABatch batch = sample_a_batch(spec, draws, key, cfg.threads);
    for (const auto& lam : lambda_grid_BCD(2, 6)) {
      rep.add(cf_check(std::string(row.name) + "_cf", lam_json(lam),
                       empirical_cf(batch, lam), c_finite_BCD(rs, lam)));
    }
  }
  return rep;
}

// ---------------------------------------------------------- diag-weighted ---

SuiteReport suite_diag_weighted(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "diag-weighted";
  const std::uint64_t draws = cfg.draws ? cfg.draws : 1000000;
  {
    GroupSpec spec{GroupFamily::A, 2, GroupBasis::standard};
    ABatch batch = sample_a_batch(spec, draws, {cfg.seed, 201}, cfg.threads);
    for (double t : {0.5, 1.0}) {
      SpectralParam lam = SpectralParam::of({{1, 2.0 * t}});
      const double s = 1.0;
      const EmpiricalCF e =
          empirical_cf_weighted(batch, lam, s, WeightKind::sigma_r, 1);
      const cd ref = (1.0 + s) / cd(1.0 + s, -t);
      rep.add(cf_check("su2_weighted", lam_json(lam, s, "s"), e, ref));
      rep.add(gap_check("su2_weighted_cfunc", lam_json(lam, s, "s"),
                        c_weighted({Family::A, 2}, lam, s, 1), ref, 1e-12));
    }
    SpectralParam lam0 = SpectralParam::of({{1, 1.0}});
    const EmpiricalCF w0 =
        empirical_cf_weighted(batch, lam0, 0.0, WeightKind::sigma_r, 1);
    const EmpiricalCF p0 = empirical_cf(batch, lam0);
    rep.add(gap_check("su2_s0_reduction", lam_json(lam0), w0.value, p0.value,
                      1e-12));
  }
  {
    GroupSpec spec{GroupFamily::D, 2, GroupBasis::quadratic_form};
    RootSystemSpec rs{Family::D, 2};
    ABatch batch = sample_a_batch(spec, draws, {cfg.seed, 202}, cfg.threads);
    const double s = 1.0;
    for (const auto& lam : {SpectralParam::of({{1, 1.0}}),
                            SpectralParam::of({{1, 1.0}, {2, 0.5}})}) {
      const EmpiricalCF e =
          empirical_cf_weighted(batch, lam, s, WeightKind::det_block);
      rep.add(cf_check("so4_weighted", lam_json(lam, s, "s"), e,
                       c_weighted(rs, lam, s)));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- selberg ---

SuiteReport suite_selberg(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "selberg";
  const std::uint64_t draws = cfg.draws ? cfg.draws : 1000000;
  const char* note =
      "unit-variance convention: weight e^{-sum u} matches the Gamma "
      "product as printed; the tr(g*g)/2 Gaussian convention rescales the "
      "identity by a 2^{-ins}-type factor (documented mismatch)";
  int stream = 300;
  for (int n : {1, 2, 3}) {
    for (double s : {0.5, 1.0}) {
      auto chk = selberg_mc_check(
          n, s, draws, {cfg.seed, static_cast<std::uint64_t>(stream++)},
          cfg.threads);
      CheckRecord r = cf_check("selberg_n" + std::to_string(n),
                               pjson({{"n", double(n)}, {"s", s}}),
                               chk.estimate, chk.reference);
      r.note = note;
      rep.add(r);
    }
  }
  CheckRecord r0 = gap_check("selberg_s0", pjson({{"n", 2.0}, {"s", 0.0}}),
                             selberg_gamma_ratio(2, 0.0), cd(1.0), 0.0);
  r0.note = note;
  rep.add(r0);
  {
    const int n = 3;
    const double s = 0.7;
    const cd lhs = selberg_gamma_ratio(n, s) * selberg_gamma_ratio(n, -s);
    double rhs = 1.0;
    for (int j = 1; j <= n; ++j)
      rhs *= std::norm(std::exp(log_gamma(cd(j, -s)) - log_gamma(cd(j, 0.0))));
    CheckRecord r = gap_check("selberg_reflection",
                              pjson({{"n", double(n)}, {"s", s}}), lhs, rhs,
                              1e-12);
    r.note = note;
    rep.add(r);
  }
  return rep;
}

// --------------------------------------------------------------- weyl-dim ---

SuiteReport suite_weyl_dim(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "weyl-dim";
  const std::uint64_t draws = cfg.draws ? cfg.draws : 1000000;
  int stream = 400;
  auto add = [&](int n, int r) {
    auto chk = weyl_dimension_check(
        n, r, draws, {cfg.seed, static_cast<std::uint64_t>(stream++)},
        cfg.threads);
    rep.add(z_check("weyl_dim_su" + std::to_string(n) + "_r" + std::to_string(r),
                    pjson({{"n", double(n)}, {"r", double(r)}}), chk.estimate,
                    chk.reference, chk.stderr_));
  };
  for (int n : {2, 3, 4, 5}) add(n, 1);
  add(3, 2);
  return rep;
}

// ----------------------------------------------------------- scaled-limit ---

SuiteReport suite_scaled_limit(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "scaled-limit";
  const auto grid = lambda_grid_A(3, 5);
  for (const auto& lam : grid) {
    const cd v1 = c_limit_A(lam, 1000);
    const cd v2 = c_limit_A(lam, 10000);
    rep.add(gap_check("climitA_cutoff_stability", lam_json(lam), v1, v2, 1e-6));
  }
  for (const auto& lam : grid) {
    SpectralParam lz;
    for (auto& e : lam.values) lz.values.push_back({e.first - 2, e.second});
    const cd v1 = c_doubly_infinite_finite(lz, 1000, 1000, true);
    const cd v2 = c_doubly_infinite_finite(lz, 10000, 10000, true);
    rep.add(gap_check("climitZ_cutoff_stability", lam_json(lz), v1, v2, 1e-6));
    const cd raw1 = c_doubly_infinite_finite(lz, 1000, 1000, false);
    rep.add(exploratory("climitZ_raw_window_gap", lam_json(lz), raw1 - v2,
                        "raw symmetric window minus tail-completed value"));
  }
  const int n = 128;
  const std::uint64_t draws = cfg.draws ? cfg.draws : 12000;
  GroupSpec spec{GroupFamily::A, n, GroupBasis::standard};
  ABatch batch = sample_a_batch(spec, draws, {cfg.seed, 601}, cfg.threads);
  const double shift = 0.5 * std::log(static_cast<double>(n));  // beta = 1
  for (std::uint64_t i = 0; i < batch.n_samples; ++i) {
    double* row = batch.logs.data() + i * batch.a_count;
    for (int j = 0; j < batch.a_count; ++j) row[j] += shift;
  }
  const std::vector<SpectralParam> mc_pts = {
      SpectralParam::of({{1, 1.0}}), SpectralParam::of({{1, 0.6}, {2, -0.4}})};
  for (const auto& lam : mc_pts) {
    rep.add(cf_check("scaled_su128_vs_limit", lam_json(lam),
                     empirical_cf(batch, lam), c_limit_A(lam)));
  }
  return rep;
}

// -------------------------------------------------------------- grassmann ---

double scalar_graph_stat(const ComplexMatrix& z) {
  const double r2 = std::norm(z(0, 0));
  return r2 / (1.0 + r2);
}

SuiteReport suite_grassmann(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "grassmann";
  const std::uint64_t ks_draws = cfg.draws ? cfg.draws : 100000;
  const double ks_threshold = 1.63 / std::sqrt(static_cast<double>(ks_draws));
  {
    std::vector<double> u(ks_draws), v(ks_draws);
    for (std::uint64_t i = 0; i < ks_draws; ++i) {
      const ComplexMatrix z = sample_grassmann_invariant(1, {cfg.seed, 700}, i);
      u[i] = scalar_graph_stat(z);
      ComplexMatrix zi(1, 1);
      zi(0, 0) = 1.0 / z(0, 0);
      v[i] = scalar_graph_stat(zi);
    }
    rep.add(ks_record("m1_uniform_ks", pjson({{"M", 1.0}}), ks_uniform(u),
                      ks_threshold));
    rep.add(ks_record("m1_inversion_ks", pjson({{"M", 1.0}}), ks_uniform(v),
                      ks_threshold));
  }
  {
    std::vector<double> u(ks_draws);
    for (std::uint64_t i = 0; i < ks_draws; ++i) {
      const ComplexMatrix Z = sample_grassmann_invariant(2, {cfg.seed, 701}, i);
      u[i] = scalar_graph_stat(project_corner(Z, 1));
    }
    rep.add(ks_record("projection_coherence_ks", pjson({{"M", 2.0}, {"m", 1.0}}),
                      ks_uniform(u), ks_threshold));
  }
  // E[tr(Z*Z (1+Z*Z)^{-1})] = M/2
  {
    const int M = 2;
    const std::uint64_t draws = cfg.draws ? cfg.draws : 100000;
    RealMeanAcc acc;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const ComplexMatrix Z = sample_grassmann_invariant(M, {cfg.seed, 705}, i);
      ComplexMatrix h = ComplexMatrix::identity(M);
      for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) {
          cd s = 0.0;
          for (int k = 0; k < M; ++k) s += std::conj(Z(k, a)) * Z(k, b);
          h(a, b) += s;
        }
      // tr(Z*Z (1+Z*Z)^{-1}) = M - tr((1+Z*Z)^{-1})
      acc.add(M - inverse(h).trace().real());
    }
    rep.add(z_check("half_trace_identity", pjson({{"M", double(M)}}), acc.mean(),
                    M / 2.0, acc.stderr_()));
  }
  // cocycle change of variables at s = 0.5 under a fixed unitary, M = 2
  {
    const int M = 2;
    const double s = 0.5;
    const std::uint64_t draws = cfg.draws ? cfg.draws : 200000;
    const ComplexMatrix g = haar_unitary(2 * M, {cfg.seed, 702}, 0);
    const int nstat = 5;
    struct Acc {
      std::vector<RealMeanAcc> diff;  // f(Z')u - f(Z) rho u per statistic
      RealMeanAcc w;
      std::uint64_t dropped = 0;
      void combine(const Acc& o) {
        if (diff.empty()) { *this = o; return; }
        if (o.diff.empty()) return;
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i].combine(o.diff[i]);
        w.combine(o.w);
        dropped += o.dropped;
      }
    };
    auto stats = [&](const ComplexMatrix& z) {
      std::vector<double> f(nstat);
      f[0] = scalar_graph_stat(z);
      double fr = 0.0;
      for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) fr += std::norm(z(a, b));
      f[1] = fr / (1.0 + fr);
      const double d2 = std::norm(determinant(z));
      f[2] = d2 / (1.0 + d2);
      f[3] = std::exp(-fr / 4.0);
      f[4] = 1.0 / (1.0 + std::norm(z(0, 1)));
      return f;
    };
    auto acc = run_chunked<Acc>(
        draws, 4096, cfg.threads,
        [&](Acc& a, std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
          a.diff.resize(nstat);
          for (std::uint64_t i = lo; i < hi; ++i) {
            const ComplexMatrix Z =
                sample_grassmann_invariant(M, {cfg.seed, 703}, i);
            // mu_s importance weight from the mu_0 sampler
            const double logdet1p =
                grassmann_logdensity(Z, M, 0.0) / (-2.0 * M);
            const double us = std::exp(-s * logdet1p);
            try {
              const MoebiusResult mb = moebius(g, Z);
              const double rho = std::exp(2.0 * s * mb.log_cocycle);
              const auto fz = stats(Z);
              const auto fzp = stats(mb.Zp);
              for (int q = 0; q < nstat; ++q)
                a.diff[q].add((fzp[q] - fz[q] * rho) * us);
              a.w.add(us);
            } catch (const TransversalityError&) {
              ++a.dropped;
            }
          }
        });
    for (int q = 0; q < nstat; ++q) {
      // E_mu_s[f(Z')] - E_mu_s[f rho] = mean(diff)/mean(u_s); z-score on diff
      rep.add(z_check("cocycle_change_of_vars_f" + std::to_string(q),
                      pjson({{"M", double(M)}, {"s", s}, {"stat", double(q)}}),
                      acc.diff[q].mean(), 0.0, acc.diff[q].stderr_()));
    }
  }
  return rep;
}

// --------------------------------------------------------- mu0-projection ---

SuiteReport suite_mu0_projection(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "mu0-projection";
  // schur consistency: direct formula vs four-map composition
  {
    double worst = 0.0;
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
      const ComplexMatrix g = ginibre(6, 1.0, {cfg.seed, 801}, rep_i) +
                              cd(3.0) * ComplexMatrix::identity(6);
      const ComplexMatrix a = schur_chain(g, 3, 1);
      const ComplexMatrix b = schur_chain_four_maps(g, 3, 1);
      worst = std::max(worst, (a - b).max_abs());
    }
    rep.add(bool_check("four_map_equivalence", pjson({{"N", 3.0}, {"n", 1.0}}),
                       worst < 1e-9, worst));
  }
  // pushforward mu_0^{(2)} -> mu_0^{(1)} vs direct sampling
  {
    const std::uint64_t draws = cfg.draws ? cfg.draws : 200000;
    const int nstat = grassmann_statistics_count();
    struct Acc {
      std::vector<RealMeanAcc> a, b;
      std::uint64_t dropped = 0;
      void combine(const Acc& o) {
        if (a.empty()) { *this = o; return; }
        if (o.a.empty()) return;
        for (std::size_t i = 0; i < a.size(); ++i) {
          a[i].combine(o.a[i]);
          b[i].combine(o.b[i]);
        }
        dropped += o.dropped;
      }
    };
    auto acc = run_chunked<Acc>(
        draws, 4096, cfg.threads,
        [&](Acc& ac, std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
          ac.a.resize(nstat);
          ac.b.resize(nstat);
          for (std::uint64_t i = lo; i < hi; ++i) {
            const ComplexMatrix g =
                sample_grassmann_invariant(4, {cfg.seed, 802}, i);
            try {
              const ComplexMatrix z = schur_chain(g, 2, 1);
              const auto sa = grassmann_statistics(z);
              for (int q = 0; q < nstat; ++q) ac.a[q].add(sa[q]);
            } catch (const SingularBlock&) {
              ++ac.dropped;
              continue;
            }
            const ComplexMatrix w =
                sample_grassmann_invariant(2, {cfg.seed, 803}, i);
            const auto sb = grassmann_statistics(w);
            for (int q = 0; q < nstat; ++q) ac.b[q].add(sb[q]);
          }
        });
    for (int q = 0; q < nstat; ++q) {
      const double se = std::sqrt(acc.a[q].stderr_() * acc.a[q].stderr_() +
                                  acc.b[q].stderr_() * acc.b[q].stderr_());
      rep.add(z_check("pushforward_stat" + std::to_string(q),
                      pjson({{"N", 2.0}, {"n", 1.0}, {"stat", double(q)}}),
                      acc.a[q].mean(), acc.b[q].mean(), se));
    }
  }
  // Gaussian Schur limit, n = 1, N = 64
  {
    const std::uint64_t draws = cfg.draws ? cfg.draws : 20000;
    auto chk =
        gaussian_schur_limit_check(1, 64, draws, {cfg.seed, 810}, cfg.threads);
    for (std::size_t q = 0; q < chk.z_scores.size(); ++q) {
      CheckRecord r;
      r.name = "gaussian_schur_stat" + std::to_string(q);
      r.param_json = pjson({{"n", 1.0}, {"N", 64.0}, {"stat", double(q)}});
      r.estimate = chk.mean_a[q];
      r.reference = chk.mean_b[q];
      r.score = chk.z_scores[q];
      r.verdict = chk.z_scores[q] <= 4.0 ? Verdict::pass : Verdict::fail;
      rep.add(r);
    }
    // negative control: without the N^{-1/2} factor the first statistic drifts
    rep.add(exploratory("schur_unscaled_drift", pjson({{"n", 1.0}}),
                        cd(0.0), "unscaled drift is exercised in unit tests"));
  }
  // finiteness probe for mu_s at n=1, r=0, s=1 (radial MC tail exponent)
  {
    RealMeanAcc mass;
    const std::uint64_t draws = 20000;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const ComplexMatrix g = ginibre(2, 1.0, {cfg.seed, 820}, i);
      MuSDensitySpec spec{1, 0, 1.0};
      // importance from the Gaussian: finite iff weights stay integrable
      const double ld = mu_s_logdensity(g, spec);
      mass.add(std::isfinite(ld) ? std::exp(std::min(ld + 8.0, 40.0)) : 0.0);
    }
    rep.add(exploratory("mu_s_finiteness_probe", pjson({{"n", 1.0}, {"r", 0.0},
                                                        {"s", 1.0}}),
                        mass.mean(), "bounded importance mass (s > -1 regime)"));
  }
  return rep;
}

// ------------------------------------------------------------------- toda ---

SuiteReport suite_toda(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "toda";
  (void)cfg;
  const auto sl2 = GeneralizedCartanMatrix::sl(2);
  // sl2 closed form a(1) = tanh 1
  {
    TodaState s0{{cd(0.0)}, {cd(1.0)}, cd(0.0)};
    const auto traj = integrate(s0, sl2, cd(1.0), 1e-10);
    const cd a1 = traj.states.back().a[0];
    rep.add(gap_check("sl2_tanh", pjson({{"t", 1.0}}), a1, std::tanh(1.0), 1e-9));
    rep.add(bool_check("sl2_hamiltonian_drift", "{}",
                       traj.hamiltonian_drift <= 1e-8 * 3.0,
                       traj.hamiltonian_drift));
    // closed-form factorization solution
    const ComplexMatrix x0 = toda_matrix(s0);
    const ComplexMatrix xt = solve_by_factorization(x0, cd(0.7));
    rep.add(gap_check("sl2_factorization_entry", pjson({{"t", 0.7}}), xt(0, 0),
                      std::tanh(0.7), 1e-10));
    rep.add(gap_check("sl2_factorization_b", pjson({{"t", 0.7}}), xt(1, 0),
                      1.0 / (std::cosh(0.7) * std::cosh(0.7)), 1e-10));
  }
  // factorization vs ODE on sl3, sl4
  for (int npo : {3, 4}) {
    const auto A = GeneralizedCartanMatrix::sl(npo);
    TodaState s0;
    s0.a.resize(npo - 1);
    s0.b.resize(npo - 1);
    for (int j = 0; j < npo - 1; ++j) {
      s0.a[j] = cd(0.3 + 0.1 * j, 0.1 - 0.05 * j);
      s0.b[j] = cd(0.8 - 0.2 * j, 0.15 * j + 0.05);
    }
    const ComplexMatrix x0 = toda_matrix(s0);
    double sup = 0.0, drift = 0.0;
    for (int ti = 1; ti <= 10; ++ti) {
      const double t = 0.1 * ti;
      const auto traj = integrate(s0, A, cd(t), 1e-10);
      drift = std::max(drift, traj.hamiltonian_drift);
      const ComplexMatrix xt = solve_by_factorization(x0, cd(t));
      const TodaState ode = traj.states.back();
      const TodaState fac = toda_state_from_matrix(xt);
      for (int j = 0; j < npo - 1; ++j) {
        sup = std::max(sup, std::abs(ode.a[j] - fac.a[j]));
        sup = std::max(sup, std::abs(ode.b[j] - fac.b[j]));
      }
    }
    rep.add(bool_check("sl" + std::to_string(npo) + "_factorization_vs_ode",
                       pjson({{"n", double(npo)}}), sup <= 1e-6, sup));
    rep.add(bool_check("sl" + std::to_string(npo) + "_hamiltonian_drift",
                       pjson({{"n", double(npo)}}), drift <= 1e-8 * 10, drift));
  }
  // time reversal
  {
    TodaState s0{{cd(0.1, 0.2)}, {cd(0.9, -0.1)}, cd(0.0)};
    const auto fwd = integrate(s0, sl2, cd(1.0, 0.3), 1e-9);
    TodaState mid = fwd.states.back();
    mid.t = 0.0;
    const auto back = integrate(mid, sl2, cd(-1.0, -0.3), 1e-9);
    const TodaState& end = back.states.back();
    double err = 0.0;
    err = std::max(err, std::abs(end.a[0] - s0.a[0]));
    err = std::max(err, std::abs(end.b[0] - s0.b[0]));
    rep.add(bool_check("time_reversal", "{}", err <= 1e-8, err));
  }
  // monodromy on finite type
  {
    TodaState s0{{cd(0.0)}, {cd(1.0)}, cd(0.0)};
    const double m = monodromy_probe(s0, sl2, cd(0.4, 0.2), 0.3, 1e-11);
    rep.add(bool_check("sl2_monodromy", pjson({{"radius", 0.3}}), m < 1e-7, m));
  }
  {
    const auto A = GeneralizedCartanMatrix::sl(3);
    TodaState s0{{cd(0.2, 0.05), cd(-0.1, 0.1)}, {cd(0.7), cd(0.5, 0.2)}, cd(0.0)};
    const double m = monodromy_probe(s0, A, cd(0.3, -0.1), 0.3, 1e-11);
    rep.add(bool_check("sl3_monodromy", pjson({{"radius", 0.3}}), m < 1e-7, m));
  }
  // sl2 imaginary-ray singularity near pi/2 (pole of tan)
  {
    TodaState s0{{cd(0.0)}, {cd(1.0)}, cd(0.0)};
    const auto hits = singularity_scan(s0, sl2, cd(0.0, 1.0), 3.0, 1e-9);
    const bool ok = !hits.empty() &&
                    std::abs(std::abs(hits[0].t) - 0.5 * kPi) < 5e-3;
    rep.add(bool_check("sl2_imaginary_pole", "{}", ok,
                       hits.empty() ? -1.0 : std::abs(hits[0].t)));
    const auto none = singularity_scan(s0, sl2, cd(1.0, 0.0), 5.0, 1e-9);
    rep.add(bool_check("sl2_real_ray_clean", "{}", none.empty(),
                       static_cast<double>(none.size())));
  }
  // exploratory: hyperbolic scans
  {
    const auto H = GeneralizedCartanMatrix::from_rows({{2, -3}, {-3, 2}});
    TodaState s0{{cd(0.1), cd(-0.05)}, {cd(0.6), cd(0.4)}, cd(0.0)};
    for (int ray = 0; ray < 3; ++ray) {
      const double th = 0.5 * ray;
      const cd dir = std::exp(cd(0.0, th));
      const auto hits = singularity_scan(s0, H, dir, 6.0, 1e-9);
      const cd t_first = hits.empty() ? cd(0.0) : hits[0].t;
      rep.add(exploratory("hyperbolic_scan_ray" + std::to_string(ray),
                          pjson({{"arg", th}}), t_first,
                          hits.empty() ? "no blow-up within t_max"
                                       : "first blow-up time (data)"));
    }
    const double m = [&]() {
      try {
        return monodromy_probe(s0, H, cd(0.25, 0.1), 0.2, 1e-10);
      } catch (const BlowUp&) {
        return -1.0;
      }
    }();
    rep.add(exploratory("hyperbolic_monodromy", pjson({{"radius", 0.2}}), m,
                        "mismatch reported as evidence, never asserted"));
  }
  return rep;
}

// ------------------------------------------------------------------ szego ---

SuiteReport suite_szego(const SuiteConfig& cfg) {
  (void)cfg;
  SuiteReport rep;
  rep.suite = "szego";
  struct Case {
    const char* name;
    std::vector<cd> x;
  };
  const Case cases[] = {
      {"single_mode", {cd(0.3, 0.0)}},
      {"three_mode", {cd(0.3, 0.0), cd(0.0, 0.15), cd(0.1, -0.05)}}};
  for (const auto& c : cases) {
    double prev_gap = 1e300;
    bool monotone = true;
    double gap256 = 0.0;
    for (int M : {32, 64, 128, 256}) {
      const auto chk = szego_check(c.x, 1.0, M);
      if (chk.gap > prev_gap + 1e-13) monotone = false;
      prev_gap = chk.gap;
      if (M == 256) {
        gap256 = chk.gap;
        rep.add(exploratory(std::string(c.name) + "_raw_truncated",
                            pjson({{"M", double(M)}}), chk.raw_truncated,
                            "|det A_M|^2 converges to the square of the "
                            "operator identity (strong Szego limit)"));
      }
    }
    rep.add(bool_check(std::string(c.name) + "_gap_at_256",
                       pjson({{"M", 256.0}, {"k", 1.0}}), gap256 < 1e-4,
                       gap256));
    rep.add(bool_check(std::string(c.name) + "_monotone_ladder", "{}", monotone,
                       prev_gap));
  }
  // x = 0: both sides exactly 1
  {
    const auto chk = szego_check({cd(0.0)}, 1.0, 16);
    rep.add(gap_check("zero_loop", "{}", chk.operator_side, 1.0, 1e-12));
  }
  return rep;
}

// -------------------------------------------------------------- partition ---

SuiteReport suite_partition(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "partition";
  const char* note =
      "Z = Gamma(1+k/beta) e^{+gamma k/beta}; every product factor exceeds 1, "
      "so the printed e^{-gamma k/beta} sign cannot hold (documented)";
  const std::pair<double, double> cases[] = {{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}};
  for (auto [beta, k] : cases) {
    const double prod = partition_Z_product(beta, k, 1000000);
    const double gamma_form = partition_Z(beta, k);
    CheckRecord r = gap_check("product_vs_gamma",
                              pjson({{"beta", beta}, {"k", k}}), prod,
                              gamma_form, 1e-8);
    r.note = note;
    rep.add(r);
    const double raw = partition_Z_product(beta, k, 1000000, /*raw=*/true);
    rep.add(exploratory("raw_truncation_gap", pjson({{"beta", beta}, {"k", k}}),
                        raw - gamma_form, "O(1/cutoff) raw truncation drift"));
  }
  rep.add(gap_check("k0_trivial", pjson({{"beta", 1.0}, {"k", 0.0}}),
                    partition_Z(1.0, 0.0), 1.0, 0.0));
  rep.add(gap_check("k_eq_beta", pjson({{"beta", 1.0}, {"k", 1.0}}),
                    partition_Z(1.0, 1.0), std::exp(kEulerGamma), 1e-12));
  // MC at K = 64
  {
    const std::uint64_t draws = cfg.draws ? cfg.draws : 100000;
    const auto chk =
        partition_constant_mc(1.0, 1.0, 64, draws, {cfg.seed, 900}, cfg.threads);
    rep.add(z_check("mc_vs_truncated_product",
                    pjson({{"beta", 1.0}, {"k", 1.0}, {"K", 64.0}}), chk.mc_mean,
                    chk.truncated_product, chk.mc_stderr));
    rep.add(exploratory("truncated_vs_full",
                        pjson({{"beta", 1.0}, {"k", 1.0}, {"K", 64.0}}),
                        chk.truncated_product - chk.partition_z,
                        "K = 64 truncation vs the full constant"));
  }
  return rep;
}

// ---------------------------------------------------------------- kernels ---

SuiteReport suite_kernels(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "kernels";
  // Hankel trace identity on random trig polynomials (K <= 4, N <= 2, M >= K)
  {
    const StreamKey key{cfg.seed, 1000};
    for (int trial = 0; trial < 4; ++trial) {
      const int N = 1 + trial % 2;
      const int K = 2 + trial;
      LoopFourier loop = LoopFourier::from_modes(N, std::min(K, 4), [&](int k) {
        ComplexMatrix m(N, N);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            m(i, j) = 0.5 * complex_gaussian(
                                key, trial,
                                static_cast<std::uint32_t>(
                                    (k + 8) * 16 + i * N + j));
        return m;
      });
      const int M = std::max(loop.K, 4 + trial);
      const auto chk = hankel_trace_identity_check(loop, M);
      rep.add(bool_check("hankel_trace_trial" + std::to_string(trial),
                         pjson({{"N", double(N)}, {"K", double(loop.K)},
                                {"M", double(M)}}),
                         chk.gap < 1e-10, chk.gap));
    }
    // analytic loop -> zero Hankel
    LoopFourier analytic = LoopFourier::from_modes(1, 3, [&](int k) {
      ComplexMatrix m(1, 1);
      m(0, 0) = (k >= 0) ? cd(0.3 / (1 + k), 0.1) : cd(0.0);
      return m;
    });
    const auto chk = hankel_trace_identity_check(analytic, 8);
    rep.add(bool_check("hankel_analytic_zero", "{}", chk.trace_c2 == 0.0,
                       chk.trace_c2));
  }
  // I_n kernel lemma
  {
    bool i1_ok = true;
    double worst = 0.0;
    for (double delta : {0.01, 0.1, 0.5, 1.0, 2.0}) {
      const double got = In_kernel(1, delta);
      const double want = 1.0 - delta / kPi;
      worst = std::max(worst, std::abs(got - want));
      if (std::abs(got - want) > 1e-10) i1_ok = false;
    }
    rep.add(bool_check("I1_closed_form", "{}", i1_ok, worst));
    double worst_dev = 0.0;
    for (int n = 1; n <= 50; ++n)
      worst_dev = std::max(worst_dev, std::abs(In_kernel(n, 1e-3) - 1.0));
    rep.add(bool_check("In_delta_small", pjson({{"delta", 1e-3}}),
                       worst_dev < 5e-3, worst_dev));
    double worst_diff = 0.0;
    for (int n : {1, 2, 5, 10, 25}) {
      for (double delta : {0.05, 0.3, 1.0}) {
        const double lhs = In_kernel(n, delta) - In_kernel(n + 1, delta);
        worst_diff = std::max(worst_diff, std::abs(lhs - In_difference(n, delta)));
      }
    }
    rep.add(bool_check("In_difference_formula", "{}", worst_diff < 1e-9,
                       worst_diff));
    // telescoping bound: sum |I_n - I_{n+1}| uniformly bounded on a delta grid
    double max_sum = 0.0;
    for (double delta : {0.01, 0.1, 0.5, 1.0, kPi / 2}) {
      double sum = 0.0;
      double prev = In_kernel(1, delta);
      for (int n = 1; n <= 200; ++n) {
        const double nxt = prev - In_difference(n, delta);
        sum += std::abs(prev - nxt);
        prev = nxt;
      }
      max_sum = std::max(max_sum, sum);
    }
    rep.add(bool_check("In_telescoping_bound", "{}", max_sum < 8.0, max_sum));
  }
  // SU(2) heat kernel: normalization, theta -> 0, semigroup closure
  {
    const double t = 0.5;
    auto haar_weight = [](double th) {
      const double s = std::sin(th);
      return (2.0 / kPi) * s * s;
    };
    const double mass =
        integrate([&](double th) { return heat_kernel_su2(t, th) * haar_weight(th); },
                  1e-12, kPi, 1e-10)
            .value;
    rep.add(gap_check("heat_normalization", pjson({{"t", t}}), mass, 1.0, 1e-8));
    const double near0 = heat_kernel_su2(t, 1e-9);
    rep.add(bool_check("heat_theta0_finite", "{}", std::isfinite(near0), near0));
    // semigroup via character coefficients: <p_s, chi_n><p_t, chi_n>/n
    //  = <p_{s+t}, chi_n>
    const double s1 = 0.3, s2 = 0.4;
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
      auto coef = [&](double tt) {
        return integrate(
                   [&](double th) {
                     const double chi = std::sin(n * th) / std::sin(th);
                     return heat_kernel_su2(tt, th) * chi * haar_weight(th);
                   },
                   1e-12, kPi, 1e-10)
            .value;
      };
      const double lhs = coef(s1) * coef(s2) / n;
      const double rhs = coef(s1 + s2);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep.add(bool_check("heat_semigroup", pjson({{"s", s1}, {"t", s2}}),
                       worst < 1e-6, worst));
  }
  return rep;
}

// ----------------------------------------------------------- gaussian-shift ---

SuiteReport suite_gaussian_shift(const SuiteConfig& cfg) {
  (void)cfg;
  SuiteReport rep;
  rep.suite = "gaussian-shift";
  for (double p : {1.0, 2.0, 4.0}) {
    const double s = 1e-3;
    const double ratio = gaussian_shift_lp(s, p) / std::pow(s, p);
    const double want = normal_abs_moment(p);
    rep.add(bool_check("small_s_ratio_p" + std::to_string(int(p)),
                       pjson({{"p", p}, {"s", s}}),
                       std::abs(ratio - want) < 1e-4 * std::max(1.0, want),
                       std::abs(ratio - want)));
    // numeric sup over the log grid, recorded against the printed constant
    double sup = 0.0;
    for (int i = 0; i <= 24; ++i) {
      const double sv = std::pow(10.0, -3.0 + 4.0 * i / 24.0);
      sup = std::max(sup, gaussian_shift_lp(sv, p) / std::pow(sv, p));
    }
    const double printed =
        2.0 * std::exp(log_gamma(cd(0.5 * (p + 1.0))).real());
    rep.add(exploratory("grid_sup_p" + std::to_string(int(p)),
                        pjson({{"p", p}}), cd(sup, 0.0),
                        "printed candidate 2*Gamma((p+1)/2) = " +
                            format_double(printed) +
                            "; normalized moment E|t|^p = " +
                            format_double(normal_abs_moment(p))));
    rep.add(bool_check("sup_finite_p" + std::to_string(int(p)),
                       pjson({{"p", p}}), std::isfinite(sup), sup));
  }
  rep.add(gap_check("s0_trivial", pjson({{"p", 2.0}, {"s", 0.0}}),
                    gaussian_shift_lp(0.0, 2.0), 0.0, 0.0));
  return rep;
}

// -------------------------------------------------------------- spherical ---

SuiteReport suite_spherical(const SuiteConfig& cfg) {
  (void)cfg;
  SuiteReport rep;
  rep.suite = "spherical";
  // Fourier pair closure in u = 2 log a
  {
    double worst_fwd = 0.0;
    for (double lam : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double got =
          integrate(
              [&](double u) {
                return (1.0 / kPi) / std::cosh(u) * std::cos(lam * u);
              },
              0.0, 30.0, 1e-10)
              .value *
          2.0;
      worst_fwd = std::max(worst_fwd, std::abs(got - sech_cf(lam)));
    }
    rep.add(bool_check("fourier_forward", "{}", worst_fwd < 1e-6, worst_fwd));
    double worst_inv = 0.0;
    for (double a : {1.0, 1.5, 2.0}) {
      const double u = 2.0 * std::log(a);
      const double got = integrate(
                             [&](double lam) {
                               return sech_cf(lam) * std::cos(lam * u) / kPi;
                             },
                             0.0, 40.0, 1e-10)
                             .value;
      worst_inv = std::max(worst_inv, std::abs(got - sech_density(a)));
    }
    rep.add(bool_check("fourier_inverse", "{}", worst_inv < 1e-6, worst_inv));
  }
  // sech partial product
  {
    const double gap = std::abs(sech_cf_partial(1.0, 100000) - sech_cf(1.0));
    rep.add(bool_check("sech_partial_product", pjson({{"N", 1e5}}), gap < 1e-4,
                       gap));
    rep.add(bool_check("sech_decay", pjson({{"lambda", 10.0}}),
                       sech_cf(10.0) < 1e-6, sech_cf(10.0)));
  }
  // residue series against the printed closed forms at a = 2
  {
    const double a = 2.0;
    rep.add(gap_check("residue_family1", pjson({{"a", a}}),
                      residue_series_1_partial(a, 60),
                      residue_series_1_closed(a), 1e-10));
    rep.add(gap_check("residue_family2", pjson({{"a", a}}),
                      residue_series_2_partial(a, 60),
                      residue_series_2_closed(a), 1e-10));
    // ratio of residue_phi to phi_closed constant across a grid
    double ratio0 = residue_phi(1.5, 200) / phi_closed(1.5);
    double worst = 0.0;
    for (double av : {2.0, 3.0, 5.0}) {
      const double r = residue_phi(av, 200) / phi_closed(av);
      worst = std::max(worst, std::abs(r - ratio0) / std::abs(ratio0));
    }
    rep.add(bool_check("residue_ratio_constant", "{}", worst < 1e-8, worst));
  }
  // quadrature inversion vs the closed-form shape
  {
    SphericalInverter inv(sech_harish_transform, 1e-9);
    // normalize phi_closed against da/a as well
    const double z = integrate(
                         [&](double u) {
                           return 0.5 * phi_closed(std::exp(0.5 * u));
                         },
                         -14.0, 14.0, 1e-11)
                         .value;
    double worst = 0.0;
    for (double a : {1.5, 2.0, 3.0}) {
      worst = std::max(worst, std::abs(inv.value(a) - phi_closed(a) / z));
    }
    rep.add(bool_check("inversion_matches_phi", "{}", worst < 1e-6, worst));
    const double sym =
        std::abs(inv.value(2.0) - inv.value(0.5));
    rep.add(bool_check("inversion_weyl_symmetry", "{}", sym < 1e-6, sym));
  }
  // affine c-product probe: sl2 reduction + stability (s = 0), conjectural rows
  {
    const std::vector<std::vector<double>> roots = {{2.0}};
    const std::vector<double> rho = {1.0};
    for (double lam : {0.5, 1.0}) {
      const cd probe =
          affine_c_product_probe(roots, rho, {lam}, {}, 2, 0.0, 0.0, 10000);
      rep.add(gap_check("affine_sech_reduction", pjson({{"lambda", lam}}),
                        probe, sech_cf(lam), 1e-6));
      const cd p2 =
          affine_c_product_probe(roots, rho, {lam}, {}, 2, 0.0, 0.0, 20000);
      rep.add(gap_check("affine_cutoff_stability", pjson({{"lambda", lam}}),
                        probe, p2, 1e-6));
    }
    const cd conj = affine_c_product_probe(roots, rho, {1.0}, {1.0}, 2, 0.5,
                                           1.0, 20000);
    rep.add(exploratory("affine_weighted_probe",
                        pjson({{"lambda", 1.0}, {"s", 0.5}, {"k", 1.0}}), conj,
                        "CONJECTURAL value of the weighted double product"));
  }
  return rep;
}

// ---------------------------------------------------------- birkhoff-probe ---

SuiteReport suite_birkhoff_probe(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "birkhoff-probe";
  // abelian split exactness: e^{x_- + x_+} with single modes
  {
    const cd xm(0.2, 0.1), xp(0.15, -0.05);
    // g(theta) = exp(xm e^{-i theta} + xp e^{i theta})
    LoopFourier loop = LoopFourier::from_sampler(
        1, 24,
        [&](double th) {
          ComplexMatrix g(1, 1);
          g(0, 0) = std::exp(xm * std::exp(cd(0.0, -th)) +
                             xp * std::exp(cd(0.0, th)));
          return g;
        });
    const auto f = birkhoff_factor(loop, 64);
    const cd got_minus = f.g_minus.ghat(-1)(0, 0);
    const cd got_plus = f.g_plus.ghat(1)(0, 0);
    rep.add(gap_check("abelian_split_minus", "{}", got_minus, xm, 1e-6));
    rep.add(gap_check("abelian_split_plus", "{}", got_plus, xp, 1e-6));
    rep.add(gap_check("abelian_split_g0", "{}", f.g0(0, 0), 1.0, 1e-6));
  }
  // analytic loop: g_minus = I
  {
    LoopFourier loop = LoopFourier::from_modes(1, 3, [&](int k) {
      ComplexMatrix m(1, 1);
      m(0, 0) = k == 0 ? cd(1.0) : (k > 0 ? cd(0.4 / k, 0.1) : cd(0.0));
      return m;
    });
    const auto f = birkhoff_factor(loop, 32);
    double worst = 0.0;
    for (int k = 1; k < 8; ++k) worst = std::max(worst, std::abs(f.g_minus.ghat(-k)(0, 0)));
    rep.add(bool_check("analytic_gminus_identity", "{}", worst < 1e-8, worst));
  }
  // SU(2) trig loop: reconstruction residual decays on a dyadic ladder
  {
    const LoopFourier loop =
        su2_bridge_loop(4.0, 6, 1 << 10, {cfg.seed, 1100}, 0);
    double prev = 1e300;
    bool decreasing = true;
    double last = 0.0;
    for (int M : {8, 16, 32, 64}) {
      const auto f = birkhoff_factor(loop, M);
      double resid = 0.0;
      for (int p = 0; p < 32; ++p) {
        const double th = 2.0 * kPi * p / 32;
        resid = std::max(resid, (loop.eval(th) - f.eval(th)).max_abs());
      }
      if (resid > prev * 1.05 + 1e-12) decreasing = false;
      prev = resid;
      last = resid;
    }
    rep.add(bool_check("su2_reconstruction_ladder", "{}", decreasing, last));
  }
  // g0 law histograms (exploratory)
  {
    const std::uint64_t draws = cfg.draws ? cfg.draws : 1500;
    const auto h1 =
        g0_law_probe(8.0, 0.0, draws, 24, {cfg.seed, 1101}, cfg.threads);
    double mass = 0.0;
    for (double m : h1.mass) mass += m;
    rep.add(bool_check("g0_hist_mass", pjson({{"beta", 8.0}}),
                       std::abs(mass - 1.0) < 1e-9, mass));
    rep.add(exploratory("g0_median_beta8", pjson({{"beta", 8.0}}), h1.median,
                        "large beta concentrates near tr = 2"));
    const auto h2 =
        g0_law_probe(4.0, 0.0, draws, 24, {cfg.seed, 1102}, cfg.threads);
    double tv = 0.0;
    for (std::size_t b = 0; b < h1.mass.size() && b < h2.mass.size(); ++b)
      tv += 0.5 * std::abs(h1.mass[b] - h2.mass[b]);
    rep.add(exploratory("g0_tv_beta8_vs_beta4", "{}", tv,
                        "histogram stability across the beta ladder"));
    double overlay_l1 = 0.0;
    for (std::size_t b = 0; b < h2.mass.size(); ++b)
      overlay_l1 += std::abs(h2.mass[b] - h2.overlay[b]);
    rep.add(exploratory("g0_overlay_l1_beta4", "{}", overlay_l1,
                        "distance to the conjectured tau^{-3} law (data)"));
  }
  return rep;
}

// ---------------------------------------------------------- product-measure ---

SuiteReport suite_product_measure(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "product-measure";
  const std::uint64_t draws = cfg.draws ? cfg.draws : 200000;
  // ginibre centering and variance
  {
    ComplexMeanAcc mean_entry;
    RealMeanAcc mean_sq;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const ComplexMatrix g = ginibre(2, 2.0, {cfg.seed, 1200}, i);
      mean_entry.add(g(0, 0));
      mean_sq.add(std::norm(g(0, 1)));
    }
    rep.add(z_check("ginibre_centering", pjson({{"beta", 2.0}}),
                    std::abs(mean_entry.mean()), 0.0, mean_entry.stderr_max()));
    rep.add(z_check("ginibre_entry_variance", pjson({{"beta", 2.0}}),
                    mean_sq.mean(), 1.0, mean_sq.stderr_()));
  }
  // scalar CF of nu_1: E e^{-i Re(conj(x) g)} = e^{-1/2} at x = e11, beta = 1
  {
    ComplexMeanAcc acc;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const ComplexMatrix g = ginibre(1, 1.0, {cfg.seed, 1201}, i);
      acc.add(std::exp(cd(0.0, -g(0, 0).real())));
    }
    EmpiricalCF e;
    e.value = acc.mean();
    e.stderr_ = acc.stderr_max();
    e.n_samples = acc.n;
    rep.add(cf_check("nu_beta_cf", pjson({{"beta", 1.0}}), e,
                     cd(std::exp(-0.5))));
  }
  // product measure CF: d = (1) and d = (1,1)
  for (int nd : {1, 2}) {
    const std::vector<double> d(nd, 1.0);
    for (double u : {0.5, 1.0, 2.0}) {
      ComplexMeanAcc acc;
      for (std::uint64_t i = 0; i < draws; ++i) {
        const ComplexMatrix s = product_measure_sample(
            d, 1, {cfg.seed, static_cast<std::uint64_t>(1210 + nd)}, i);
        acc.add(std::exp(cd(0.0, -u * s(0, 0).real())));
      }
      EmpiricalCF e;
      e.value = acc.mean();
      e.stderr_ = acc.stderr_max();
      e.n_samples = acc.n;
      const cd ref = std::pow(1.0 / (1.0 + u * u), nd);
      rep.add(cf_check("product_measure_cf_d" + std::to_string(nd),
                       pjson({{"u", u}}), e, ref));
    }
  }
  // abelian loop moments
  {
    const int K = 8;
    std::vector<RealMeanAcc> per_mode(K);
    RealMeanAcc harmonic;
    double worst_imag = 0.0;
    const double beta = 1.3;
    for (std::uint64_t i = 0; i < draws / 2; ++i) {
      const auto x = abelian_loop_sample(beta, K, {cfg.seed, 1230}, i);
      double hsum = 0.0;
      for (int n = 1; n <= K; ++n) {
        per_mode[n - 1].add(std::norm(x[n - 1]) * beta * n * n);
        hsum += n * std::norm(x[n - 1]);
      }
      harmonic.add(hsum);
      // real-valuedness of the reconstructed loop
      const double v = abelian_loop_eval(x, 0.61);
      (void)v;  // abelian_loop_eval returns the real combination by definition
      cd complex_sum = 0.0;
      for (int n = 1; n <= K; ++n)
        complex_sum += x[n - 1] * std::exp(cd(0.0, n * 0.61)) +
                       std::conj(x[n - 1]) * std::exp(cd(0.0, -n * 0.61));
      worst_imag = std::max(worst_imag, std::abs(complex_sum.imag()));
    }
    bool per_mode_ok = true;
    double worst_z = 0.0;
    for (int n = 1; n <= K; ++n) {
      const double z = std::abs(per_mode[n - 1].mean() - 1.0) /
                       per_mode[n - 1].stderr_();
      worst_z = std::max(worst_z, z);
      if (z > 4.0) per_mode_ok = false;
    }
    rep.add(bool_check("abelian_mode_variances", pjson({{"beta", beta}}),
                       per_mode_ok, worst_z));
    double href = 0.0;
    for (int n = 1; n <= K; ++n) href += 1.0 / (beta * n);
    rep.add(z_check("abelian_harmonic_sum", pjson({{"beta", beta}}),
                    harmonic.mean(), href, harmonic.stderr_()));
    rep.add(bool_check("abelian_real_loop", "{}", worst_imag < 1e-12,
                       worst_imag));
  }
  // Haar moments and invariance battery
  {
    const int n = 4;
    RealMeanAcc m2, m4;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const ComplexMatrix u = haar_unitary(n, {cfg.seed, 1240}, i);
      m2.add(std::norm(u(0, 0)));
      m4.add(std::norm(u(0, 0)) * std::norm(u(0, 0)));
    }
    rep.add(z_check("haar_m2", pjson({{"n", double(n)}}), m2.mean(), 1.0 / n,
                    m2.stderr_()));
    rep.add(z_check("haar_m4", pjson({{"n", double(n)}}), m4.mean(),
                    2.0 / (n * (n + 1.0)), m4.stderr_()));
    // SU(2): |g11|^2 uniform
    std::vector<double> u2(draws / 2);
    for (std::uint64_t i = 0; i < draws / 2; ++i) {
      const ComplexMatrix g = haar_special_unitary(2, {cfg.seed, 1241}, i);
      u2[i] = std::norm(g(0, 0));
    }
    rep.add(ks_record("su2_entry_uniform_ks", "{}", ks_uniform(u2),
                      1.63 / std::sqrt(static_cast<double>(draws / 2))));
    // det = 1
    double worst_det = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const ComplexMatrix g = haar_special_unitary(3, {cfg.seed, 1242}, i);
      worst_det = std::max(worst_det, std::abs(determinant(g) - cd(1.0)));
    }
    rep.add(bool_check("su_det_one", "{}", worst_det < 1e-10, worst_det));
    // left invariance on 8 bounded statistics
    const ComplexMatrix w = haar_unitary(n, {cfg.seed, 1243}, 0);
    std::vector<RealMeanAcc> plain(8), translated(8);
    auto battery = [n](const ComplexMatrix& g, std::vector<RealMeanAcc>& acc) {
      acc[0].add(std::norm(g(0, 0)));
      acc[1].add(g(0, 0).real());
      acc[2].add(std::abs(g.trace()) / n);
      acc[3].add(std::cos(std::arg(g(0, 1))));
      acc[4].add(std::norm(g(1, 0)));
      acc[5].add((g(0, 0) * std::conj(g(1, 1))).real());
      acc[6].add(std::min(1.0, std::abs(g(0, 0) + g(1, 1))));
      acc[7].add(std::norm(g(n - 1, n - 1)));
    };
    for (std::uint64_t i = 0; i < draws / 2; ++i) {
      const ComplexMatrix g = haar_unitary(n, {cfg.seed, 1244}, i);
      battery(g, plain);
      battery(matmul(w, g), translated);
    }
    double worst_z = 0.0;
    for (int q = 0; q < 8; ++q) {
      const double se =
          std::sqrt(plain[q].stderr_() * plain[q].stderr_() +
                    translated[q].stderr_() * translated[q].stderr_());
      worst_z =
          std::max(worst_z, std::abs(plain[q].mean() - translated[q].mean()) / se);
    }
    rep.add(bool_check("haar_left_invariance", pjson({{"n", double(n)}}),
                       worst_z <= 4.0, worst_z));
    // quadratic-form basis samples preserve the paper transpose form
    for (auto fam : {GroupFamily::D, GroupFamily::B, GroupFamily::C}) {
      GroupSpec spec{fam, 2, GroupBasis::quadratic_form};
      double worst = 0.0;
      for (std::uint64_t i = 0; i < 50; ++i) {
        const ComplexMatrix g = haar_compact(spec, {cfg.seed, 1245}, i);
        const ComplexMatrix r =
            matmul(paper_transpose(g, fam), g) -
            ComplexMatrix::identity(g.rows());
        worst = std::max(worst, r.max_abs());
      }
      rep.add(bool_check(
          std::string("form_preservation_") +
              (fam == GroupFamily::D ? "D" : fam == GroupFamily::B ? "B" : "C"),
          pjson({{"l", 2.0}}), worst < 1e-10, worst));
    }
    // scaled SU entry variance at n = 64 -> 1/beta
    {
      const double beta = 2.0;
      RealMeanAcc acc;
      for (std::uint64_t i = 0; i < 4000; ++i) {
        const ComplexMatrix g = scaled_su(64, beta, {cfg.seed, 1246}, i);
        acc.add(std::norm(g(0, 0)));
      }
      rep.add(z_check("scaled_su_entry_variance",
                      pjson({{"n", 64.0}, {"beta", beta}}), acc.mean(),
                      1.0 / beta, acc.stderr_()));
      const ComplexMatrix g = scaled_su(64, beta, {cfg.seed, 1246}, 0);
      double fro2 = 0.0;
      for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) fro2 += std::norm(g(a, b));
      rep.add(gap_check("scaled_su_frobenius", pjson({{"n", 64.0}}), fro2,
                        64.0 * 64.0 / beta, 1e-8));
    }
  }
  return rep;
}

// ------------------------------------------------------------ registry etc ---

using SuiteFn = SuiteReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"diag-A", suite_diag_A},
      {"diag-BCD", suite_diag_BCD},
      {"diag-weighted", suite_diag_weighted},
      {"selberg", suite_selberg},
      {"weyl-dim", suite_weyl_dim},
      {"grassmann", suite_grassmann},
      {"mu0-projection", suite_mu0_projection},
      {"toda", suite_toda},
      {"szego", suite_szego},
      {"partition", suite_partition},
      {"kernels", suite_kernels},
      {"gaussian-shift", suite_gaussian_shift},
      {"spherical", suite_spherical},
      {"birkhoff-probe", suite_birkhoff_probe},
      {"scaled-limit", suite_scaled_limit},
      {"product-measure", suite_product_measure},
  };
  return reg;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

bool suite_exists(const std::string& name) {
  for (auto& [n, fn] : registry())
    if (n == name) return true;
  return false;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  for (auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep = fn(config);
    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    rep.seed = config.seed;
    rep.threads = config.threads;
    rep.kernel_lane = simd::active_lane();
    rep.version = kVersion;
    return rep;
  }
  throw UnknownSuite(name);
}

SuiteConfig load_config_file(const std::string& path, SuiteConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") base.seed = std::stoull(value);
    else if (key == "threads") base.threads = std::stoi(value);
    else if (key == "draws") base.draws = std::stoull(value);
    else if (key == "out") base.out_dir = value;
    else if (key == "format") {
      base.formats.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) base.formats.push_back(trim(item));
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  return base;
}

}  // namespace kmlab
