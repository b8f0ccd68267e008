#pragma once

#include <cstdint>

namespace gridsar {

// Seeded splitmix64 generator. Hand-rolled so sequences are identical on
// every platform and toolchain; std:: distributions make no such promise.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  Rng(uint64_t seed, uint64_t stream) : state_(mix(seed) ^ mix(stream * 0x9E3779B97F4A7C15ULL)) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // Uniform index in [0, n). Multiply-shift (no modulo bias worth caring
  // about at these ranges, and fully deterministic).
  uint32_t next_index(uint32_t n) {
    return static_cast<uint32_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_index(static_cast<uint32_t>(hi - lo + 1)));
  }

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// Stream tags so independent draws (e.g. target placement vs planner
// simulation) never share a sequence.
inline constexpr uint64_t kStreamTargets = 0x7461726765747301ULL;
inline constexpr uint64_t kStreamPlanner = 0x706c616e6e657201ULL;
inline constexpr uint64_t kStreamScenario = 0x7363656e61726f01ULL;

inline uint64_t fnv1a64(const char* data, size_t size) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < size; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

}  // namespace gridsar
