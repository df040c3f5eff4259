#pragma once

// Naive re-implementation of the two-phase search used only by tests.
// Every figure is recomputed from scratch (full correlation rebuilds, the
// oracle's brute-force fitness); the only shared pieces are the pinned RNG
// and the draw-order contract.  run_search() must reproduce this trajectory
// bit for bit -- same neighbor choices, same fitness doubles, same counters.

#include <cmath>
#include <cstdint>
#include <vector>

#include "pslopt/oracle.hpp"
#include "pslopt/rng.hpp"
#include "pslopt/search.hpp"
#include "pslopt/sequence.hpp"

namespace reftest {

struct RefStep {
  uint64_t nse;        // after this step (including a restart, if any)
  double value_step;   // fitness of the selected neighbor
  double value_local;  // phase-best fitness after this step
  int32_t psl_best;
  uint32_t phase;
};

struct RefResult {
  std::vector<int8_t> solution_best;
  int32_t psl_best;
  uint64_t nse;
  uint64_t switches;
  std::vector<RefStep> steps;
};

inline int32_t ref_psl(const std::vector<int8_t>& s) {
  const uint32_t L = static_cast<uint32_t>(s.size());
  int32_t peak = 0;
  for (uint32_t k = 1; k < L; ++k) {
    int32_t acc = 0;
    for (uint32_t i = 0; i + k < L; ++i) {
      acc += static_cast<int32_t>(s[i]) * static_cast<int32_t>(s[i + k]);
    }
    if (std::abs(acc) > peak) peak = std::abs(acc);
  }
  return peak;
}

inline double ref_fitness(const std::vector<int8_t>& s, uint32_t alpha) {
  return pslopt::oracle::brute_fitness(
      pslopt::BinarySequence(std::vector<int8_t>(s)), alpha);
}

inline RefResult reference_search(const pslopt::SearchParams& params) {
  using namespace pslopt;
  const SearchParams p = validate_params(params);
  const uint32_t L = p.length;
  const uint32_t n = p.n_lmt;

  Rng rng(p.seed);
  std::vector<int8_t> pivot(L);
  if (p.init) {
    pivot = *p.init;
  } else {
    for (uint32_t i = 0; i < L; ++i) pivot[i] = rng.spin();
  }

  uint32_t alpha = p.alpha1;
  uint32_t phase = 1;
  double value_local = ref_fitness(pivot, alpha);
  uint64_t nse = 1;

  std::vector<int8_t> local_best = pivot;
  std::vector<int8_t> solution_best = pivot;
  int32_t psl_best = ref_psl(pivot);
  uint64_t unimproved = 0;
  uint64_t switches = 0;

  RefResult out;
  while (nse < p.stop.max_nse.value()) {
    const uint32_t start = static_cast<uint32_t>(rng.bounded(L));
    // Scan with running updates: argmin for fitness, strict improvement
    // for the PSL incumbent, both favoring small i.
    double value_step = 0.0;
    uint32_t move_to = 0;
    bool have_step = false;
    for (uint32_t i = 1; i <= n; ++i) {
      const uint32_t j = (start + i) % L;
      std::vector<int8_t> neigh = pivot;
      neigh[j] = static_cast<int8_t>(-neigh[j]);
      const double value = ref_fitness(neigh, alpha);
      const int32_t npsl = ref_psl(neigh);
      if (!have_step || value < value_step) {
        value_step = value;
        move_to = j;
        have_step = true;
      }
      if (npsl < psl_best) {
        psl_best = npsl;
        solution_best = neigh;
      }
    }
    nse += n;

    pivot[move_to] = static_cast<int8_t>(-pivot[move_to]);

    if (value_step < value_local) {
      unimproved = 0;
      local_best = pivot;
      value_local = value_step;
    } else if (value_step > value_local) {
      if (++unimproved > p.ls_lmt) {
        pivot = local_best;
        // Same draw contract as flip_random_distinct: bounded(L) with
        // rejection on repeats.
        std::vector<uint8_t> used(L, 0);
        uint32_t done = 0;
        while (done < p.flip_lmt) {
          const uint32_t pos = static_cast<uint32_t>(rng.bounded(L));
          if (used[pos]) continue;
          used[pos] = 1;
          pivot[pos] = static_cast<int8_t>(-pivot[pos]);
          ++done;
        }
        phase = (phase == 1) ? 2u : 1u;
        alpha = (phase == 1) ? p.alpha1 : p.alpha2;
        value_local = ref_fitness(pivot, alpha);
        nse += 1;
        unimproved = 0;
        ++switches;
      }
    }
    out.steps.push_back({nse, value_step, value_local, psl_best, phase});
  }

  out.solution_best = std::move(solution_best);
  out.psl_best = psl_best;
  out.nse = nse;
  out.switches = switches;
  return out;
}

}  // namespace reftest
