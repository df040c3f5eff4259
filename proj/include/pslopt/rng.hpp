#pragma once

#include <bit>
#include <cstdint>

namespace pslopt {

// Pinned pseudo-random generator: xoshiro256** 1.0 (Blackman/Vigna), state
// seeded from a single 64-bit value via splitmix64.  Every search run is a
// pure function of its seed, so the generator itself is part of the output
// contract: do not swap the algorithm or reorder draws without bumping the
// solver version.
//
// Draw conventions used across the library (all pinned):
//   * spin():      maps the top bit of next() to an element, 0 -> +1, 1 -> -1.
//   * bounded(n):  uniform in [0, n) by masked rejection; always consumes at
//                  least one draw, even for n == 1.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    // splitmix64: decorrelates trivially related seeds (0, 1, 2, ...).
    uint64_t z = seed;
    for (auto& word : s_) {
      z += 0x9e3779b97f4a7c15ull;
      uint64_t x = z;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
      word = x ^ (x >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, n).  Masked rejection keeps the distribution exact
  // (no modulo bias); the expected number of draws is < 2.
  uint64_t bounded(uint64_t n) {
    const uint64_t mask = (n <= 1) ? 0 : (~0ull >> std::countl_zero(n - 1));
    for (;;) {
      const uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }

  // One sequence element: +1 or -1 with equal probability.
  int8_t spin() { return (next() >> 63) ? int8_t{-1} : int8_t{+1}; }

 private:
  uint64_t s_[4];
};

}  // namespace pslopt
