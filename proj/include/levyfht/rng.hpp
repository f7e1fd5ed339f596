#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace levyfht {

// Stream namespaces. Subsystems that derive independent random streams from
// the same master seed use distinct domains so their streams never collide.
enum class RngDomain : std::uint64_t {
  kTrials = 0,  // one stream per simulated trial
  kGroups = 1,  // one stream per resampling group
  kField = 2,   // Poisson target field generation
  kMass = 3,    // Monte Carlo Gaussian-mass estimates
  kTest = 4,    // scratch streams for tests and oracles
};

// Counter-based generator (Philox 4x32-10, Salmon et al. 2011).
//
// The output sequence is a pure function of (seed, stream): trial i can be
// simulated on any thread, in any order, and always sees the same numbers.
// State is four counter words (two block words, two stream words) plus the
// 64-bit key derived from the seed.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  Rng(std::uint64_t seed, RngDomain domain, std::uint64_t index)
      : Rng(seed, (static_cast<std::uint64_t>(domain) << 56) | index) {}

  std::uint32_t next_u32() {
    if (buf_pos_ == 4) refill();
    return buf_[buf_pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on the open interval (0,1); cannot return 0 or 1, so logs of
  // uniforms are always finite.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Exponential with mean 1.
  double exponential() { return -std::log(uniform01()); }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached, so consumption is two uniforms per pair.
  double normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    const double r = std::sqrt(2.0 * exponential());
    const double a = 2.0 * kPi * uniform01();
    cached_normal_ = r * std::sin(a);
    have_cached_normal_ = true;
    return r * std::cos(a);
  }

  // Uniform integer in [0, n), n >= 1, exactly unbiased.
  std::uint32_t below(std::uint32_t n) {
    const std::uint32_t limit =
        std::numeric_limits<std::uint32_t>::max() -
        std::numeric_limits<std::uint32_t>::max() % n;
    std::uint32_t r;
    do {
      r = next_u32();
    } while (r >= limit);
    return r % n;
  }

  static constexpr double kPi = 3.14159265358979323846;

  // Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox4x32_10(
      std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      ctr = philox_round(ctr, key);
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static std::array<std::uint32_t, 4> philox_round(
      const std::array<std::uint32_t, 4>& x,
      const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    return {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
  }

  void refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32), stream_[0], stream_[1]};
    const auto out = philox4x32_10(ctr, key_);
    buf_[0] = out[0];
    buf_[1] = out[1];
    buf_[2] = out[2];
    buf_[3] = out[3];
    buf_pos_ = 0;
    ++block_;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

// splitmix64 finalizer; used to fold auxiliary identifiers into seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Poisson count with the given mean. Knuth's product method, chunked so the
// running product never underflows for large means.
inline std::uint64_t sample_poisson(double mean, Rng& rng) {
  std::uint64_t total = 0;
  while (mean > 30.0) {
    double chunk = 25.0;
    const double limit = std::exp(-chunk);
    std::uint64_t n = 0;
    double prod = rng.uniform01();
    while (prod > limit) {
      ++n;
      prod *= rng.uniform01();
    }
    total += n;
    mean -= chunk;
  }
  if (mean > 0.0) {
    const double limit = std::exp(-mean);
    std::uint64_t n = 0;
    double prod = rng.uniform01();
    while (prod > limit) {
      ++n;
      prod *= rng.uniform01();
    }
    total += n;
  }
  return total;
}

}  // namespace levyfht
