#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

#include "pslopt/errors.hpp"

namespace pslopt {

inline constexpr uint32_t kMinLength = 2;
inline constexpr uint32_t kMaxLength = 1u << 20;

// A binary sequence s_0..s_{L-1} with every element +1 or -1.
// Positions in this API are 0-based; correlation shifts k run 1..L-1.
class BinarySequence {
 public:
  explicit BinarySequence(std::vector<int8_t> elements);

  uint32_t length() const { return static_cast<uint32_t>(elems_.size()); }
  int8_t at(uint32_t i) const { return elems_[i]; }
  const int8_t* data() const { return elems_.data(); }
  std::span<const int8_t> elements() const { return {elems_.data(), elems_.size()}; }

  // Negates the element at position j.  Callers that also maintain a
  // SidelobeTable should go through apply_flip() to keep the pair in sync.
  void flip(uint32_t j);

  bool operator==(const BinarySequence&) const = default;

 private:
  std::vector<int8_t> elems_;
};

// All aperiodic autocorrelation values of one sequence, kept as plain int32.
// Slot 0 holds the zero-shift value (always == L), slots 1..L-1 hold C_k.
// |C_k| <= L - k <= 2^20, so int32 never overflows, and flip updates move
// each entry by 0, +-2 or +-4.
class SidelobeTable {
 public:
  static SidelobeTable build(const BinarySequence& s);  // O(L^2)

  uint32_t length() const { return static_cast<uint32_t>(c_.size()); }
  int32_t at(uint32_t k) const;  // bounds-checked; at(0) == length
  const int32_t* data() const { return c_.data(); }
  int32_t* data() { return c_.data(); }

  bool operator==(const SidelobeTable&) const = default;

 private:
  SidelobeTable() = default;
  std::vector<int32_t> c_;
};

// Single aperiodic autocorrelation C_k = sum_{i=0}^{L-1-k} s_i * s_{i+k}.
// C_0 == L by definition. Throws ConfigError unless 0 <= k <= L-1.
int32_t autocorrelation(const BinarySequence& s, uint32_t k);

// Peak sidelobe level: max over k = 1..L-1 of |C_k|.
int32_t psl(const SidelobeTable& t);

// x^e by binary exponentiation, multiplying factors lowest bit first.  This
// is the one canonical way the library raises a sidelobe magnitude to the
// fitness exponent; std::pow is deliberately avoided because libm results
// vary across platforms and the run records promise bit-exact replay.
double pow_int(double base, uint32_t exp);

// lut[a] = pow_int(a, alpha) for a = 0..max_abs_value, so the hot path can
// replace the exponentiation with a load.  Values are bit-identical to
// calling pow_int directly.
class PowerTable {
 public:
  PowerTable(uint32_t max_abs_value, uint32_t alpha);

  double operator[](uint32_t a) const { return lut_[a]; }
  const double* data() const { return lut_.data(); }
  uint32_t alpha() const { return alpha_; }
  uint32_t size() const { return static_cast<uint32_t>(lut_.size()); }

 private:
  std::vector<double> lut_;
  uint32_t alpha_;
};

// Fitness F = sum_{k=1}^{L-1} |C_k|^alpha, accumulated in ascending k on a
// single double.  The summation order is part of the determinism contract.
// Throws OverflowError if the sum leaves the finite double range.
double fitness(const SidelobeTable& t, uint32_t alpha);
double fitness(const SidelobeTable& t, const PowerTable& pow);

// Merit factor L^2 / (2 * sum_k C_k^2).  The sum is formed exactly in int64;
// only the final division is floating point.
double merit_factor(const SidelobeTable& t);

// Correlation deltas caused by flipping position j:
//   delta_k = -2 * s_j * (s_{j-k} [if j-k >= 0]  +  s_{j+k} [if j+k < L])
// evaluated on the sequence *before* the flip.  out[0] is set to 0 and
// out[k] to delta_k for k = 1..L-1; out.size() must equal L.
void flip_deltas(const BinarySequence& s, uint32_t j, std::span<int32_t> out);

struct NeighborEval {
  double fitness;
  int32_t psl;
};

// Fitness and PSL of the one-flip neighbor at position j, in O(L) without
// materializing it.  Bit-exact against flipping, rebuilding and scoring from
// scratch (same per-k walk, same accumulation order).
NeighborEval evaluate_neighbor(const BinarySequence& s, const SidelobeTable& t,
                               uint32_t j, uint32_t alpha);
NeighborEval evaluate_neighbor(const BinarySequence& s, const SidelobeTable& t,
                               uint32_t j, const PowerTable& pow);

// Flips position j in s and folds the deltas into t, keeping the invariant
// t == SidelobeTable::build(s).  O(L); self-inverse.
void apply_flip(BinarySequence& s, SidelobeTable& t, uint32_t j);

namespace detail {

// Shared one-flip evaluation kernel.  For neighbor j the shifts split into
// three ranges: k <= min(j, L-1-j) where both s[j-k] and s[j+k] exist,
// then the side where exactly one of them exists, then a tail where the
// flip cannot touch C_k at all.  The tail still contributes |C_k|^alpha, so
// it is summed too (in the same ascending-k order as everywhere else).
inline NeighborEval eval_flip(const int8_t* s, const int32_t* c, uint32_t L,
                              uint32_t j, const double* lut) {
  const int32_t sj2 = -2 * static_cast<int32_t>(s[j]);
  const uint32_t left = j;            // shifts with s[j-k] in range
  const uint32_t right = L - 1 - j;   // shifts with s[j+k] in range
  const uint32_t both_end = left < right ? left : right;
  const uint32_t one_end = left < right ? right : left;

  double sum = 0.0;
  int32_t peak = 0;
  uint32_t k = 1;
  for (; k <= both_end; ++k) {
    const int32_t d = sj2 * static_cast<int32_t>(s[j - k] + s[j + k]);
    const int32_t a = std::abs(c[k] + d);
    sum += lut[a];
    if (a > peak) peak = a;
  }
  if (left >= right) {
    for (; k <= one_end; ++k) {
      const int32_t a = std::abs(c[k] + sj2 * static_cast<int32_t>(s[j - k]));
      sum += lut[a];
      if (a > peak) peak = a;
    }
  } else {
    for (; k <= one_end; ++k) {
      const int32_t a = std::abs(c[k] + sj2 * static_cast<int32_t>(s[j + k]));
      sum += lut[a];
      if (a > peak) peak = a;
    }
  }
  for (; k < L; ++k) {
    const int32_t a = std::abs(c[k]);
    sum += lut[a];
    if (a > peak) peak = a;
  }
  return {sum, peak};
}

}  // namespace detail

}  // namespace pslopt
