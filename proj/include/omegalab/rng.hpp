#pragma once

#include <cstdint>

namespace omegalab {

// Counter-based deterministic generator (splitmix64). Every run owns its own
// stream derived from (seed, stream) so results do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_run(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
  }

  // splitmix64 finalizer; full-avalanche mix of a 64-bit word.
  static std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // One fair bit; words are consumed 64 bits at a time.
  int next_bit() {
    if (bits_left_ == 0) {
      bit_word_ = next_u64();
      bits_left_ = 64;
    }
    int b = static_cast<int>(bit_word_ & 1u);
    bit_word_ >>= 1;
    --bits_left_;
    return b;
  }

  // Uniform double in (0, 1); never returns 0 so log() is safe.
  double next_unit() {
    std::uint64_t x = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(x) + 0.5) * (1.0 / 9007199254740992.0);
  }

 private:
  std::uint64_t state_;
  std::uint64_t bit_word_ = 0;
  int bits_left_ = 0;
};

}  // namespace omegalab
