#include "pslopt/oracle.hpp"

#include <cstdint>
#include <vector>

#include <doctest.h>

#include "pslopt/errors.hpp"
#include "pslopt/rng.hpp"
#include "pslopt/sequence.hpp"

using namespace pslopt;

namespace {

// Deliberately naive: enumerate all 2^L sequences, score each from scratch.
// This is the ground truth the Gray-code enumeration is checked against.
int32_t unpruned_min_psl(uint32_t L) {
  int32_t best = INT32_MAX;
  for (uint64_t x = 0; x < (1ull << L); ++x) {
    int32_t peak = 0;
    for (uint32_t k = 1; k < L && peak < best; ++k) {
      int32_t acc = 0;
      for (uint32_t i = 0; i + k < L; ++i) {
        const int32_t a = ((x >> i) & 1u) ? 1 : -1;
        const int32_t b = ((x >> (i + k)) & 1u) ? 1 : -1;
        acc += a * b;
      }
      if (std::abs(acc) > peak) peak = std::abs(acc);
    }
    if (peak < best) best = peak;
  }
  return best;
}

BinarySequence random_seq(uint32_t length, Rng& rng) {
  std::vector<int8_t> v(length);
  for (auto& e : v) e = rng.spin();
  return BinarySequence(std::move(v));
}

}  // namespace

TEST_CASE("exhaustive_psl equals unpruned enumeration for L = 2..16") {
  for (uint32_t L = 2; L <= 16; ++L) {
    const oracle::ExhaustiveResult res = oracle::exhaustive_psl(L);
    CHECK(res.optimal_psl == unpruned_min_psl(L));
    // The witness must attain the reported optimum.
    CHECK(oracle::verify_sequence(res.witness).psl == res.optimal_psl);
    CHECK(res.witness.length() == L);
    CHECK(res.witness.at(0) == +1);
  }
}

TEST_CASE("exhaustive_psl: PSL-1 lengths are exactly the Barker lengths") {
  for (uint32_t L = 2; L <= 16; ++L) {
    const bool barker =
        (L == 2 || L == 3 || L == 4 || L == 5 || L == 7 || L == 11 || L == 13);
    CHECK(oracle::exhaustive_psl(L).optimal_psl == (barker ? 1 : 2));
  }
}

TEST_CASE("exhaustive_psl is independent of the worker count") {
  for (uint32_t L : {5u, 12u, 17u}) {
    const oracle::ExhaustiveResult one = oracle::exhaustive_psl(L, 1);
    for (uint32_t workers : {2u, 3u, 5u, 8u}) {
      const oracle::ExhaustiveResult many = oracle::exhaustive_psl(L, workers);
      CHECK(many.optimal_psl == one.optimal_psl);
      CHECK(many.witness == one.witness);
    }
  }
}

TEST_CASE("exhaustive_psl rejects out-of-range lengths") {
  CHECK_THROWS_AS(oracle::exhaustive_psl(1), ConfigError);
  CHECK_THROWS_AS(oracle::exhaustive_psl(29), CapabilityError);
  CHECK_THROWS_AS(oracle::exhaustive_psl(10, 0), ConfigError);
}

TEST_CASE("brute_fitness agrees with the incremental-table fitness") {
  Rng rng(1111);
  for (int rep = 0; rep < 200; ++rep) {
    const uint32_t L = 2 + static_cast<uint32_t>(rng.bounded(128));
    const BinarySequence s = random_seq(L, rng);
    const SidelobeTable t = SidelobeTable::build(s);
    const uint32_t alpha = 1 + static_cast<uint32_t>(rng.bounded(13));
    CHECK(oracle::brute_fitness(s, alpha) == fitness(t, alpha));
  }
}

TEST_CASE("brute_fitness: fixed values") {
  const BinarySequence ones4(std::vector<int8_t>{1, 1, 1, 1});
  CHECK(oracle::brute_fitness(ones4, 2) == 14.0);  // 9 + 4 + 1

  // Barker-13 has six zero and six unit sidelobes, so the squared sum is 6
  // and the merit factor is 169/(2*6); both pin the same histogram.
  const BinarySequence b13(std::vector<int8_t>{1, 1, 1, 1, 1, -1, -1, 1, 1,
                                               -1, 1, -1, 1});
  CHECK(oracle::brute_fitness(b13, 2) == 6.0);
  CHECK(oracle::verify_sequence(b13).merit_factor ==
        169.0 / (2.0 * oracle::brute_fitness(b13, 2)));
}

TEST_CASE("verify_sequence: Barker-13 report") {
  const BinarySequence b13(std::vector<int8_t>{1, 1, 1, 1, 1, -1, -1, 1, 1,
                                               -1, 1, -1, 1});
  const oracle::SequenceReport rep = oracle::verify_sequence(b13);
  CHECK(rep.length == 13);
  CHECK(rep.psl == 1);
  CHECK(rep.merit_factor == 169.0 / (2.0 * 6.0));
  REQUIRE(rep.sidelobe_histogram.size() == 2);
  CHECK(rep.sidelobe_histogram[0] == 6);   // odd shifts cancel exactly
  CHECK(rep.sidelobe_histogram[1] == 6);

  const BinarySequence ones5(std::vector<int8_t>{1, 1, 1, 1, 1});
  CHECK(oracle::verify_sequence(ones5).psl == 4);
}

TEST_CASE("verify_sequence histogram counts every shift once") {
  Rng rng(22);
  for (int rep = 0; rep < 50; ++rep) {
    const uint32_t L = 2 + static_cast<uint32_t>(rng.bounded(200));
    const BinarySequence s = random_seq(L, rng);
    const oracle::SequenceReport r = oracle::verify_sequence(s);
    uint64_t total = 0;
    for (uint64_t c : r.sidelobe_histogram) total += c;
    CHECK(total == L - 1);
    CHECK(r.psl == psl(SidelobeTable::build(s)));
    CHECK(r.sidelobe_histogram.back() > 0);  // the peak is attained
  }
}
