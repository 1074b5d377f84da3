#pragma once

#include <cstdint>

namespace ewens {

// Counter-seeded xoshiro256** stream.  A stream is identified by a
// (seed, stream_id) pair; the state is derived from both through
// SplitMix64, so distinct stream_ids behave as independent generators
// and trial t of a run can always be replayed as RngStream(seed, t).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::uint64_t z = seed ^ split_mix(stream_id + 0x9e3779b97f4a7c15ULL);
    for (auto& w : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      w = split_mix(z);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound >= 1.  Lemire's multiply-shift
  // method; the rejection loop runs with probability < bound / 2^64.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t split_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace ewens
