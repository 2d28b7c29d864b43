// Counter-based RNG (Philox4x32-10) and Gaussian draws.
//
// Every sample is a pure function of (StreamKey, draw index): the Philox key
// holds the seed (with the high stream word folded in by an odd-constant
// multiply; in practice streams are small chunk ids), and the 128-bit counter
// holds (block-within-draw, draw, stream).  Replay is bit-identical and
// chunk-parallel generation needs no shared state.

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace kmlab {

struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  StreamKey with_stream(std::uint64_t s) const { return {seed, s}; }
};

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         std::array<std::uint32_t, 2>& k) {
  constexpr std::uint64_t M0 = 0xD2511F53ull, M1 = 0xCD9E8D57ull;
  const std::uint64_t p0 = M0 * c[0];
  const std::uint64_t p1 = M1 * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  k[0] += 0x9E3779B9u;
  k[1] += 0xBB67AE85u;
}

inline std::array<std::uint32_t, 4> philox4x32_10(
    std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) philox_round(ctr, key);
  return ctr;
}

}  // namespace detail

// One 128-bit Philox block for (key, draw, block-within-draw).
inline std::array<std::uint32_t, 4> philox_block(const StreamKey& key,
                                                 std::uint64_t draw,
                                                 std::uint32_t block) {
  const std::uint64_t folded =
      key.seed ^ ((key.stream >> 32) * 0xD2B74407B1CE6E93ull);
  const std::array<std::uint32_t, 2> k = {
      static_cast<std::uint32_t>(folded),
      static_cast<std::uint32_t>(folded >> 32)};
  const std::array<std::uint32_t, 4> c = {
      block, static_cast<std::uint32_t>(draw),
      static_cast<std::uint32_t>(draw >> 32),
      static_cast<std::uint32_t>(key.stream)};
  return detail::philox4x32_10(c, k);
}

// Uniform in [2^-64, 1], strictly positive (safe under log).
inline double uniform_pos(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
}

// Two iid N(0,1) from one Philox block (Box-Muller).
inline void gaussian_pair(const StreamKey& key, std::uint64_t draw,
                          std::uint32_t block, double& z0, double& z1) {
  const auto w = philox_block(key, draw, block);
  const std::uint64_t b0 =
      (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
  const std::uint64_t b1 =
      (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
  const double u1 = uniform_pos(b0);
  const double u2 = static_cast<double>(b1 >> 11) * 0x1p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  z0 = r * std::cos(6.283185307179586476925286766559 * u2);
  z1 = r * std::sin(6.283185307179586476925286766559 * u2);
}

// Standard complex Gaussian: E Re^2 = E Im^2 = 1, E|z|^2 = 2.
inline std::complex<double> complex_gaussian(const StreamKey& key,
                                             std::uint64_t draw,
                                             std::uint32_t block) {
  double a, b;
  gaussian_pair(key, draw, block, a, b);
  return {a, b};
}

inline double uniform01(const StreamKey& key, std::uint64_t draw,
                        std::uint32_t block) {
  const auto w = philox_block(key, draw, block);
  const std::uint64_t b0 = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
  return static_cast<double>(b0 >> 11) * 0x1p-53;
}

}  // namespace kmlab
