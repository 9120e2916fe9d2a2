#pragma once

#include <cmath>
#include <cstdint>

namespace selfnorm {

// Replication r of a campaign with master seed s draws from substream(s, r).
// Identical (seed, spec) must reproduce identical paths bit-exactly, also
// across platforms, which rules out std::normal_distribution (its algorithm
// is implementation-defined). We use xoshiro256++ seeded through splitmix64
// and explicit inverse-transform / Box-Muller samplers.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
    has_cached_normal_ = false;
  }

  // Independent substream for replication `stream`.
  static Rng substream(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t sm = master_seed;
    std::uint64_t a = splitmix64(sm);
    std::uint64_t mix = a ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    return Rng(mix);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on (0,1): 53-bit mantissa, never exactly 0.
  double uniform() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller; second variate cached.
  double normal() {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925287 * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
  }

  // +1/-1 with equal probability, one PRNG bit per draw.
  int rademacher() {
    if (bit_count_ == 0) {
      bit_cache_ = next_u64();
      bit_count_ = 64;
    }
    const int out = (bit_cache_ & 1ULL) ? 1 : -1;
    bit_cache_ >>= 1;
    --bit_count_;
    return out;
  }

  // Laplace(0, scale) by inverse CDF.
  double laplace(double scale) {
    const double u = uniform() - 0.5;
    const double mag = -std::log(1.0 - 2.0 * std::abs(u));
    return u >= 0.0 ? scale * mag : -scale * mag;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  std::uint64_t bit_cache_ = 0;
  int bit_count_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace selfnorm
