#include "pslopt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "pslopt/errors.hpp"

namespace pslopt::oracle {

namespace {

// Local power-by-squaring, kept separate from the library's pow_int on
// purpose: this file is the reference the incremental path is checked
// against.  Same algorithm, same factor order, so values are bit-identical.
double ref_pow(double base, uint32_t exp) {
  double r = 1.0;
  double f = base;
  while (exp != 0) {
    if (exp & 1u) r *= f;
    exp >>= 1;
    if (exp != 0) f *= f;
  }
  return r;
}

struct RangeBest {
  int32_t psl;
  std::vector<int8_t> witness;
};

// Scans one Gray-code slice [lo, hi) of the s_0 = +1 half-space.  Candidate
// x maps to the sequence whose positions 1..L-1 are the bits of x ^ (x >> 1)
// (set bit -> -1); consecutive x differ by exactly one flip, so the
// correlation table is carried incrementally.
RangeBest scan_range(uint32_t L, uint64_t lo, uint64_t hi) {
  std::vector<int8_t> seq(L, int8_t{+1});
  const uint64_t gray = lo ^ (lo >> 1);
  for (uint32_t t = 0; t + 1 < L; ++t) {
    if ((gray >> t) & 1u) seq[t + 1] = -1;
  }

  std::vector<int32_t> c(L);
  for (uint32_t k = 1; k < L; ++k) {
    int32_t acc = 0;
    for (uint32_t i = 0; i + k < L; ++i) {
      acc += static_cast<int32_t>(seq[i]) * static_cast<int32_t>(seq[i + k]);
    }
    c[k] = acc;
  }

  RangeBest best;
  best.psl = 0;
  for (uint32_t k = 1; k < L; ++k) best.psl = std::max(best.psl, std::abs(c[k]));
  best.witness = seq;

  for (uint64_t x = lo + 1; x < hi; ++x) {
    const uint32_t j = 1 + static_cast<uint32_t>(std::countr_zero(x));
    // One-flip table update (deltas on the pre-flip sequence).
    const int32_t sj2 = -2 * static_cast<int32_t>(seq[j]);
    for (uint32_t k = 1; k < L; ++k) {
      int32_t touched = 0;
      if (j >= k) touched += static_cast<int32_t>(seq[j - k]);
      if (j + k < L) touched += static_cast<int32_t>(seq[j + k]);
      c[k] += sj2 * touched;
    }
    seq[j] = static_cast<int8_t>(-seq[j]);

    // Peak with early exit: anything above the incumbent can be abandoned,
    // anything equal must finish the scan so ties can be lex-compared.
    int32_t peak = 0;
    bool worse = false;
    for (uint32_t k = 1; k < L; ++k) {
      const int32_t a = std::abs(c[k]);
      if (a > best.psl) {
        worse = true;
        break;
      }
      if (a > peak) peak = a;
    }
    if (worse) continue;
    if (peak < best.psl ||
        std::lexicographical_compare(seq.begin(), seq.end(),
                                     best.witness.begin(),
                                     best.witness.end())) {
      best.psl = peak;
      best.witness = seq;
    }
  }
  return best;
}

}  // namespace

ExhaustiveResult exhaustive_psl(uint32_t length, uint32_t workers) {
  if (length < kMinLength) {
    throw ConfigError("exhaustive search needs length >= " +
                      std::to_string(kMinLength));
  }
  if (length > kMaxExhaustiveLength) {
    throw CapabilityError(
        "exhaustive search supports lengths up to " +
        std::to_string(kMaxExhaustiveLength) + " (got " +
        std::to_string(length) + "); 2^" + std::to_string(length - 1) +
        " candidates is past the point of patience");
  }
  if (workers < 1) {
    throw ConfigError("worker count must be >= 1");
  }

  const uint64_t total = 1ull << (length - 1);
  const uint64_t w = std::min<uint64_t>(workers, total);
  std::vector<RangeBest> parts(w);

  if (w == 1) {
    parts[0] = scan_range(length, 0, total);
  } else {
    const uint64_t q = total / w;
    const uint64_t r = total % w;
    std::vector<std::thread> threads;
    threads.reserve(w);
    uint64_t lo = 0;
    for (uint64_t i = 0; i < w; ++i) {
      const uint64_t hi = lo + q + (i < r ? 1 : 0);
      threads.emplace_back(
          [&parts, i, length, lo, hi] { parts[i] = scan_range(length, lo, hi); });
      lo = hi;
    }
    for (auto& t : threads) t.join();
  }

  // Merge in range order; each part already holds its own lex-min witness,
  // so the combined answer does not depend on how the space was sliced.
  RangeBest merged = std::move(parts[0]);
  for (uint64_t i = 1; i < w; ++i) {
    RangeBest& p = parts[i];
    if (p.psl < merged.psl ||
        (p.psl == merged.psl &&
         std::lexicographical_compare(p.witness.begin(), p.witness.end(),
                                      merged.witness.begin(),
                                      merged.witness.end()))) {
      merged = std::move(p);
    }
  }
  return {merged.psl, BinarySequence(std::move(merged.witness))};
}

double brute_fitness(const BinarySequence& s, uint32_t alpha) {
  if (alpha < 1) {
    throw ConfigError("fitness exponent must be >= 1");
  }
  const uint32_t L = s.length();
  const int8_t* e = s.data();
  double sum = 0.0;
  for (uint32_t k = 1; k < L; ++k) {
    int32_t acc = 0;
    for (uint32_t i = 0; i + k < L; ++i) {
      acc += static_cast<int32_t>(e[i]) * static_cast<int32_t>(e[i + k]);
    }
    sum += ref_pow(static_cast<double>(std::abs(acc)), alpha);
  }
  if (!std::isfinite(sum)) {
    throw OverflowError("reference fitness is not finite at length " +
                        std::to_string(L) + " with exponent " +
                        std::to_string(alpha));
  }
  return sum;
}

SequenceReport verify_sequence(const BinarySequence& s) {
  const uint32_t L = s.length();
  const int8_t* e = s.data();
  SequenceReport rep;
  rep.length = L;

  std::vector<int32_t> mags(L, 0);
  int32_t peak = 0;
  int64_t energy = 0;
  for (uint32_t k = 1; k < L; ++k) {
    int32_t acc = 0;
    for (uint32_t i = 0; i + k < L; ++i) {
      acc += static_cast<int32_t>(e[i]) * static_cast<int32_t>(e[i + k]);
    }
    const int32_t a = std::abs(acc);
    mags[k] = a;
    if (a > peak) peak = a;
    energy += static_cast<int64_t>(acc) * static_cast<int64_t>(acc);
  }
  rep.psl = peak;
  rep.merit_factor = (static_cast<double>(L) * static_cast<double>(L)) /
                     (2.0 * static_cast<double>(energy));
  rep.sidelobe_histogram.assign(static_cast<size_t>(peak) + 1, 0);
  for (uint32_t k = 1; k < L; ++k) rep.sidelobe_histogram[mags[k]]++;
  return rep;
}

}  // namespace pslopt::oracle
