#include "pslopt/sequence.hpp"

#include <cmath>
#include <string>

namespace pslopt {

namespace {

[[noreturn]] void throw_overflow(uint32_t length, uint32_t alpha) {
  throw OverflowError(
      "fitness sum is not finite at length " + std::to_string(length) +
      " with exponent " + std::to_string(alpha) +
      "; lower the exponent (alpha2, then alpha1) until |C_k|^alpha sums stay "
      "inside double range");
}

}  // namespace

BinarySequence::BinarySequence(std::vector<int8_t> elements)
    : elems_(std::move(elements)) {
  const size_t n = elems_.size();
  if (n < kMinLength || n > kMaxLength) {
    throw ConfigError("sequence length " + std::to_string(n) +
                      " out of supported range [" + std::to_string(kMinLength) +
                      ", " + std::to_string(kMaxLength) + "]");
  }
  for (size_t i = 0; i < n; ++i) {
    if (elems_[i] != 1 && elems_[i] != -1) {
      throw ConfigError("sequence element at position " + std::to_string(i) +
                        " is " + std::to_string(int(elems_[i])) +
                        "; elements must be +1 or -1");
    }
  }
}

void BinarySequence::flip(uint32_t j) {
  if (j >= elems_.size()) {
    throw ConfigError("flip position " + std::to_string(j) +
                      " out of range for length " +
                      std::to_string(elems_.size()));
  }
  elems_[j] = static_cast<int8_t>(-elems_[j]);
}

SidelobeTable SidelobeTable::build(const BinarySequence& s) {
  const uint32_t L = s.length();
  const int8_t* e = s.data();
  SidelobeTable t;
  t.c_.resize(L);
  t.c_[0] = static_cast<int32_t>(L);
  for (uint32_t k = 1; k < L; ++k) {
    int32_t acc = 0;
    for (uint32_t i = 0; i + k < L; ++i) {
      acc += static_cast<int32_t>(e[i]) * static_cast<int32_t>(e[i + k]);
    }
    t.c_[k] = acc;
  }
  return t;
}

int32_t SidelobeTable::at(uint32_t k) const {
  if (k >= c_.size()) {
    throw ConfigError("correlation shift " + std::to_string(k) +
                      " out of range for length " + std::to_string(c_.size()));
  }
  return c_[k];
}

int32_t autocorrelation(const BinarySequence& s, uint32_t k) {
  const uint32_t L = s.length();
  if (k >= L) {
    throw ConfigError("autocorrelation shift " + std::to_string(k) +
                      " outside 0.." + std::to_string(L - 1));
  }
  const int8_t* e = s.data();
  int32_t acc = 0;
  for (uint32_t i = 0; i + k < L; ++i) {
    acc += static_cast<int32_t>(e[i]) * static_cast<int32_t>(e[i + k]);
  }
  return acc;
}

int32_t psl(const SidelobeTable& t) {
  const int32_t* c = t.data();
  const uint32_t L = t.length();
  int32_t peak = 0;
  for (uint32_t k = 1; k < L; ++k) {
    const int32_t a = std::abs(c[k]);
    if (a > peak) peak = a;
  }
  return peak;
}

double pow_int(double base, uint32_t exp) {
  double result = 1.0;
  double factor = base;
  uint32_t e = exp;
  while (e != 0) {
    if (e & 1u) result *= factor;
    e >>= 1;
    if (e != 0) factor *= factor;
  }
  return result;
}

PowerTable::PowerTable(uint32_t max_abs_value, uint32_t alpha) : alpha_(alpha) {
  if (alpha < 1) {
    throw ConfigError("fitness exponent must be >= 1");
  }
  lut_.resize(static_cast<size_t>(max_abs_value) + 1);
  for (uint32_t a = 0; a <= max_abs_value; ++a) {
    lut_[a] = pow_int(static_cast<double>(a), alpha);
  }
}

double fitness(const SidelobeTable& t, uint32_t alpha) {
  if (alpha < 1) {
    throw ConfigError("fitness exponent must be >= 1");
  }
  const int32_t* c = t.data();
  const uint32_t L = t.length();
  double sum = 0.0;
  for (uint32_t k = 1; k < L; ++k) {
    sum += pow_int(static_cast<double>(std::abs(c[k])), alpha);
  }
  if (!std::isfinite(sum)) throw_overflow(L, alpha);
  return sum;
}

double fitness(const SidelobeTable& t, const PowerTable& pow) {
  const int32_t* c = t.data();
  const double* lut = pow.data();
  const uint32_t L = t.length();
  double sum = 0.0;
  for (uint32_t k = 1; k < L; ++k) {
    sum += lut[std::abs(c[k])];
  }
  if (!std::isfinite(sum)) throw_overflow(L, pow.alpha());
  return sum;
}

double merit_factor(const SidelobeTable& t) {
  const int32_t* c = t.data();
  const uint32_t L = t.length();
  int64_t energy = 0;  // exact: (L-1) terms, each <= L^2 <= 2^40
  for (uint32_t k = 1; k < L; ++k) {
    energy += static_cast<int64_t>(c[k]) * static_cast<int64_t>(c[k]);
  }
  const double num = static_cast<double>(L) * static_cast<double>(L);
  return num / (2.0 * static_cast<double>(energy));
}

void flip_deltas(const BinarySequence& s, uint32_t j, std::span<int32_t> out) {
  const uint32_t L = s.length();
  if (j >= L) {
    throw ConfigError("flip position " + std::to_string(j) +
                      " out of range for length " + std::to_string(L));
  }
  if (out.size() != L) {
    throw ConfigError("flip_deltas output span must have length L");
  }
  const int8_t* e = s.data();
  const int32_t sj2 = -2 * static_cast<int32_t>(e[j]);
  out[0] = 0;
  for (uint32_t k = 1; k < L; ++k) {
    int32_t touched = 0;
    if (j >= k) touched += static_cast<int32_t>(e[j - k]);
    if (j + k < L) touched += static_cast<int32_t>(e[j + k]);
    out[k] = sj2 * touched;
  }
}

NeighborEval evaluate_neighbor(const BinarySequence& s, const SidelobeTable& t,
                               uint32_t j, uint32_t alpha) {
  const PowerTable pow(s.length(), alpha);
  return evaluate_neighbor(s, t, j, pow);
}

NeighborEval evaluate_neighbor(const BinarySequence& s, const SidelobeTable& t,
                               uint32_t j, const PowerTable& pow) {
  const uint32_t L = s.length();
  if (j >= L) {
    throw ConfigError("neighbor position " + std::to_string(j) +
                      " out of range for length " + std::to_string(L));
  }
  if (t.length() != L) {
    throw ConfigError("sidelobe table length does not match sequence length");
  }
  if (pow.size() < L + 1) {
    throw ConfigError("power table too small for sequence length");
  }
  NeighborEval e = detail::eval_flip(s.data(), t.data(), L, j, pow.data());
  if (!std::isfinite(e.fitness)) throw_overflow(L, pow.alpha());
  return e;
}

void apply_flip(BinarySequence& s, SidelobeTable& t, uint32_t j) {
  const uint32_t L = s.length();
  if (j >= L) {
    throw ConfigError("flip position " + std::to_string(j) +
                      " out of range for length " + std::to_string(L));
  }
  if (t.length() != L) {
    throw ConfigError("sidelobe table length does not match sequence length");
  }
  const int8_t* e = s.data();
  int32_t* c = t.data();
  const int32_t sj2 = -2 * static_cast<int32_t>(e[j]);
  const uint32_t left = j;
  const uint32_t right = L - 1 - j;
  const uint32_t both_end = left < right ? left : right;
  const uint32_t one_end = left < right ? right : left;
  uint32_t k = 1;
  for (; k <= both_end; ++k) {
    c[k] += sj2 * static_cast<int32_t>(e[j - k] + e[j + k]);
  }
  if (left >= right) {
    for (; k <= one_end; ++k) c[k] += sj2 * static_cast<int32_t>(e[j - k]);
  } else {
    for (; k <= one_end; ++k) c[k] += sj2 * static_cast<int32_t>(e[j + k]);
  }
  s.flip(j);
}

}  // namespace pslopt
