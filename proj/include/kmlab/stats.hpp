// Mean/SE accumulators with the chunk-ordered deterministic reduction, a
// Kolmogorov-Smirnov test, and the chunk-parallel runner shared by every
// Monte-Carlo suite.  Thread count changes the schedule, never the result:
// chunk partials are folded in chunk order.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace kmlab {

// Mean and per-component standard error of complex samples.
struct ComplexMeanAcc {
  double sum_re = 0.0, sum_im = 0.0;
  double sumsq_re = 0.0, sumsq_im = 0.0;
  std::uint64_t n = 0;

  void add(std::complex<double> z) {
    sum_re += z.real();
    sum_im += z.imag();
    sumsq_re += z.real() * z.real();
    sumsq_im += z.imag() * z.imag();
    ++n;
  }
  void combine(const ComplexMeanAcc& o) {
    sum_re += o.sum_re;
    sum_im += o.sum_im;
    sumsq_re += o.sumsq_re;
    sumsq_im += o.sumsq_im;
    n += o.n;
  }
  std::complex<double> mean() const {
    return {sum_re / static_cast<double>(n), sum_im / static_cast<double>(n)};
  }
  // max over components of (sample sd)/sqrt(n)
  double stderr_max() const {
    if (n < 2) return 0.0;
    const double nd = static_cast<double>(n);
    const double vr = std::max(0.0, (sumsq_re - sum_re * sum_re / nd) / (nd - 1));
    const double vi = std::max(0.0, (sumsq_im - sum_im * sum_im / nd) / (nd - 1));
    return std::sqrt(std::max(vr, vi) / nd);
  }
};

struct RealMeanAcc {
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  void combine(const RealMeanAcc& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    n += o.n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double stderr_() const {
    if (n < 2) return 0.0;
    const double nd = static_cast<double>(n);
    const double v = std::max(0.0, (sumsq - sum * sum / nd) / (nd - 1));
    return std::sqrt(v / nd);
  }
};

// KS statistic of samples in [0,1] against the uniform CDF.
inline double ks_uniform(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = samples[i];
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(f - i / n));
  }
  return d;
}

// Two-sample KS statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

// Chunk-parallel runner.  Acc must be default-constructible with
// combine(const Acc&); work(acc, chunk_index, draw_begin, draw_end) fills one
// chunk.  Partials are combined in ascending chunk index.
template <class Acc, class Work>
Acc run_chunked(std::uint64_t total, std::uint64_t chunk_size, int threads,
                const Work& work) {
  const std::uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
  std::vector<Acc> partials(n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto body = [&]() {
    while (true) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      const std::uint64_t b = c * chunk_size;
      const std::uint64_t e = std::min(total, b + chunk_size);
      work(partials[c], c, b, e);
    }
  };
  if (threads <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  Acc out;
  for (auto& p : partials) out.combine(p);
  return out;
}

}  // namespace kmlab
