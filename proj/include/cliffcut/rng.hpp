#pragma once

#include <cstdint>
#include <string_view>

namespace cliffcut {

// Deterministic PRNG (splitmix64). Every random decision in the library flows
// from one master seed through named substreams so that runs are reproducible
// regardless of evaluation order or worker count.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Single fair bit; consumes one generator step.
  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, bound); bound must be nonzero.
  uint64_t uniform_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  uint64_t state() const { return state_; }

private:
  uint64_t state_;
};

namespace detail {
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline uint64_t hash_tag(std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace detail

// Derived seed for (master seed, tag, indices); basis of every substream.
inline uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t a = 0,
                            uint64_t b = 0) {
  uint64_t h = detail::mix64(seed ^ detail::hash_tag(tag));
  h = detail::mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = detail::mix64(h ^ (b + 0x7f4a7c159e3779b9ULL));
  return h;
}

// Derives an independent substream from (seed, tag, indices). Used as e.g.
// substream(master, "variant", fragment_id, variant_index).
inline Rng substream(uint64_t seed, std::string_view tag, uint64_t a = 0, uint64_t b = 0) {
  return Rng(derive_seed(seed, tag, a, b));
}

}  // namespace cliffcut
