#include "pslopt/rng.hpp"

#include <cstdint>
#include <vector>

#include <doctest.h>

using pslopt::Rng;

TEST_CASE("same seed, same stream; different seed, different stream") {
  Rng a(12345), b(12345), c(54321);
  bool all_equal_ac = true;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t va = a.next();
    CHECK(va == b.next());
    if (va != c.next()) all_equal_ac = false;
  }
  CHECK_FALSE(all_equal_ac);
}

TEST_CASE("regression pin: first outputs for seed 42 stay fixed") {
  // Frozen from the current implementation (xoshiro256** seeded via
  // splitmix64).  These values are part of the replay contract; if this
  // test breaks, old run records no longer replay and the solver version
  // must change.
  Rng r(42);
  const uint64_t expected[4] = {
      1546998764402558742ull,
      6990951692964543102ull,
      12544586762248559009ull,
      17057574109182124193ull,
  };
  std::vector<uint64_t> got;
  for (int i = 0; i < 4; ++i) got.push_back(r.next());
  for (int i = 0; i < 4; ++i) {
    INFO("output ", i, " = ", got[i]);
    CHECK(got[i] == expected[i]);
  }
}

TEST_CASE("bounded: in range, exact for n=1, roughly uniform") {
  Rng r(777);
  CHECK(r.bounded(1) == 0);
  for (const uint64_t n : {2ull, 3ull, 10ull, 1023ull, 1ull << 33}) {
    for (int i = 0; i < 200; ++i) {
      CHECK(r.bounded(n) < n);
    }
  }
  // Coarse uniformity: 10 bins, 100k draws, each bin within 20% of mean.
  std::vector<int> bins(10, 0);
  for (int i = 0; i < 100000; ++i) bins[r.bounded(10)]++;
  for (int b = 0; b < 10; ++b) {
    CHECK(bins[b] > 8000);
    CHECK(bins[b] < 12000);
  }
}

TEST_CASE("spin: only +1/-1, roughly balanced") {
  Rng r(2468);
  int plus = 0;
  for (int i = 0; i < 100000; ++i) {
    const int8_t s = r.spin();
    CHECK((s == 1 || s == -1));
    if (s == 1) ++plus;
  }
  CHECK(plus > 48000);
  CHECK(plus < 52000);
}
