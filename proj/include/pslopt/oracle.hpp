#pragma once

#include <cstdint>
#include <vector>

#include "pslopt/sequence.hpp"

namespace pslopt::oracle {

// Largest length exhaustive_psl() accepts.  2^(L-1) sequences are visited
// (one per complement pair); 28 keeps the worst case around 10^8 visits.
inline constexpr uint32_t kMaxExhaustiveLength = 28;

struct ExhaustiveResult {
  int32_t optimal_psl;
  BinarySequence witness;  // lexicographically smallest optimum with s_0 = +1
};

// Exhaustive minimum PSL over all sequences of the given length.
// Negating a whole sequence leaves every C_k unchanged, so only sequences
// with s_0 = +1 are enumerated; the result is exact anyway.  Ties are broken
// toward the lexicographically smallest witness, comparing elements as
// signed values (-1 before +1), which makes the answer independent of the
// worker count.  Throws CapabilityError above kMaxExhaustiveLength.
ExhaustiveResult exhaustive_psl(uint32_t length, uint32_t workers = 1);

// Reference fitness sum_{k=1}^{L-1} |C_k|^alpha computed from scratch with
// its own correlation loops and its own exponentiation; shares no code with
// the incremental path it is used to check.  Same ascending-k accumulation
// order, so results are bit-comparable.
double brute_fitness(const BinarySequence& s, uint32_t alpha);

struct SequenceReport {
  uint32_t length;
  int32_t psl;
  double merit_factor;
  // histogram[a] = number of shifts k in 1..L-1 with |C_k| == a, a = 0..psl.
  std::vector<uint64_t> sidelobe_histogram;
};

// Recomputes every figure of merit for one sequence from first principles.
SequenceReport verify_sequence(const BinarySequence& s);

}  // namespace pslopt::oracle
