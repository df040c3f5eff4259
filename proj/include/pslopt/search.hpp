#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pslopt/rng.hpp"
#include "pslopt/sequence.hpp"

namespace pslopt {

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

// A run must be bounded by at least one of these.  Evaluation counting:
// the initial pivot costs 1, every scan costs its neighborhood size, every
// restart fitness recomputation costs 1.
struct StopCondition {
  std::optional<uint64_t> max_nse;      // total sequence evaluations
  std::optional<double> max_seconds;    // wall clock; breaks replayability

  bool operator==(const StopCondition&) const = default;
};

struct SearchParams {
  uint32_t length = 0;
  uint64_t seed = 1;
  uint32_t alpha1 = 4;     // phase-1 fitness exponent
  uint32_t alpha2 = 13;    // phase-2 fitness exponent
  uint32_t ls_lmt = 2000;  // worsening steps tolerated before a restart
  uint32_t flip_lmt = 10;  // distinct random flips applied at a restart
  uint32_t n_lmt = 1024;   // neighborhood positions scanned per step
  uint32_t workers = 1;    // threads used for the neighborhood scan
  StopCondition stop;
  // Warm start: use this sequence as the pivot instead of drawing one.
  std::optional<std::vector<int8_t>> init;

  bool operator==(const SearchParams&) const = default;
};

// Default phase-2 exponent by length.  Long sequences need a smaller
// exponent to keep |C_k|^alpha sums finite; the bands step down just below
// the power-of-two lengths 2^18-1 and 2^19-1.
uint32_t default_alpha2(uint32_t length);

// Default neighborhood size: the whole neighborhood for short sequences,
// capped at 1024 positions for long ones.
uint32_t default_n_lmt(uint32_t length);

// Default restart strength: 10 flips, but never more than the length.
uint32_t default_flip_lmt(uint32_t length);

// Canonical parameter set for one length (alpha1 = 4, ls_lmt = 2000, plus
// the three length-dependent defaults above).  Stop condition is left
// empty; callers must set one.
SearchParams default_params(uint32_t length);

// Validates and normalizes: checks ranges, requires a stop condition, clamps
// n_lmt and flip_lmt to the length.  If a clamp changed anything and
// `warning` is non-null, a human-readable note is appended to it.
SearchParams validate_params(const SearchParams& params,
                             std::string* warning = nullptr);

// ---------------------------------------------------------------------------
// Observability
// ---------------------------------------------------------------------------

enum class EventKind : uint8_t {
  kImprovedPsl,        // a scanned neighbor beat the best PSL seen so far
  kPhaseSwitch,        // restart: perturbed pivot, toggled exponent
  kLocalBestImproved,  // the pivot reached a new best fitness in this phase
};

const char* to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);  // throws ParseError

struct ConvergenceEvent {
  uint64_t nse;            // evaluation count after the step that fired this
  double elapsed_seconds;  // wall clock; excluded from replay comparisons
  int32_t psl_best;
  uint32_t phase_index;    // 1 or 2; for kPhaseSwitch, the phase entered
  EventKind kind;

  bool operator==(const ConvergenceEvent&) const = default;
};

// Per-scan trace for tests and instrumentation, fired once per main-loop
// iteration after the pivot moved (and after a restart, if one happened).
struct ScanTrace {
  uint64_t nse;
  double value_step;   // fitness of the selected neighbor
  double value_local;  // best fitness seen in the current phase
  int32_t psl_best;
  uint32_t phase_index;
};

struct SearchHooks {
  std::function<void(const ConvergenceEvent&)> on_event;
  std::function<void(const ScanTrace&)> on_scan;
};

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct RunRecord {
  SearchParams params;          // normalized echo; params.seed is the seed
  BinarySequence solution_best; // best-PSL sequence seen anywhere in the run
  int32_t psl_best;
  double merit_factor;          // merit factor of solution_best
  uint64_t nse;
  double elapsed_seconds;
  std::vector<ConvergenceEvent> events;
  std::string solver_version;

  bool operator==(const RunRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Fresh uniform random sequence; consumes exactly `length` spin() draws in
// position order.
BinarySequence random_sequence(uint32_t length, Rng& rng);

// Flips `count` distinct positions chosen uniformly at random (rejection on
// repeats, so draw order is reproducible), keeping the table in sync.  This
// is the restart perturbation; count == length gives the exact complement.
void flip_random_distinct(BinarySequence& s, SidelobeTable& t, uint32_t count,
                          Rng& rng);

struct ScanResult {
  uint32_t best_index;        // position of the fitness argmin neighbor
  double value_step;          // its fitness
  int32_t best_neighbor_psl;  // smallest PSL among all scanned neighbors
  uint32_t best_psl_index;    // position of the first neighbor attaining it
};

// Evaluates the n one-flip neighbors at positions (start + i) mod L for
// i = 1..n.  Ties in fitness and in PSL both resolve to the smallest i.
// Single-threaded; run_search() uses the same kernel fanned out across its
// worker pool, with results reduced in the identical order.
ScanResult neighborhood_scan(const BinarySequence& pivot,
                             const SidelobeTable& table, const PowerTable& pow,
                             uint32_t start, uint32_t n);

// Two-phase stochastic descent over one-flip neighborhoods.  Deterministic
// given (params, seed) for any worker count, as long as max_seconds is not
// the binding stop condition.
RunRecord run_search(const SearchParams& params, const SearchHooks& hooks = {});

}  // namespace pslopt
