#include "pslopt/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "pslopt/errors.hpp"
#include "pslopt/version.hpp"

namespace pslopt {

// ---------------------------------------------------------------------------
// Defaults and validation
// ---------------------------------------------------------------------------

uint32_t default_alpha2(uint32_t length) {
  if (length < (1u << 18) - 1) return 13;
  if (length < (1u << 19) - 1) return 11;
  return 10;
}

uint32_t default_n_lmt(uint32_t length) { return std::min(length, 1024u); }

uint32_t default_flip_lmt(uint32_t length) { return std::min(length, 10u); }

SearchParams default_params(uint32_t length) {
  SearchParams p;
  p.length = length;
  p.alpha1 = 4;
  p.alpha2 = default_alpha2(length);
  p.ls_lmt = 2000;
  p.flip_lmt = default_flip_lmt(length);
  p.n_lmt = default_n_lmt(length);
  return p;
}

SearchParams validate_params(const SearchParams& params, std::string* warning) {
  SearchParams p = params;
  if (p.length < kMinLength || p.length > kMaxLength) {
    throw ConfigError("length " + std::to_string(p.length) +
                      " out of supported range [" + std::to_string(kMinLength) +
                      ", " + std::to_string(kMaxLength) + "]");
  }
  if (p.alpha1 < 1 || p.alpha2 < 1) {
    throw ConfigError("fitness exponents alpha1/alpha2 must be >= 1");
  }
  if (p.ls_lmt < 1) {
    throw ConfigError("ls-lmt must be >= 1");
  }
  if (p.flip_lmt < 1) {
    throw ConfigError("flip-lmt must be >= 1");
  }
  if (p.n_lmt < 1) {
    throw ConfigError("n-lmt must be >= 1");
  }
  if (p.workers < 1 || p.workers > 4096) {
    throw ConfigError("workers must be in [1, 4096]");
  }
  if (!p.stop.max_nse && !p.stop.max_seconds) {
    throw ConfigError("a stop condition is required: max-nse and/or max-seconds");
  }
  if (p.stop.max_nse && *p.stop.max_nse < 1) {
    throw ConfigError("max-nse must be >= 1");
  }
  if (p.stop.max_seconds &&
      !(std::isfinite(*p.stop.max_seconds) && *p.stop.max_seconds > 0)) {
    throw ConfigError("max-seconds must be a positive finite number");
  }
  if (p.init && p.init->size() != p.length) {
    throw ConfigError("warm-start sequence has length " +
                      std::to_string(p.init->size()) + ", expected " +
                      std::to_string(p.length));
  }
  if (p.n_lmt > p.length) {
    if (warning) {
      *warning += "n-lmt " + std::to_string(p.n_lmt) + " exceeds the " +
                  std::to_string(p.length) +
                  " distinct one-flip neighbors; clamped to the length\n";
    }
    p.n_lmt = p.length;
  }
  if (p.flip_lmt > p.length) {
    if (warning) {
      *warning += "flip-lmt " + std::to_string(p.flip_lmt) +
                  " exceeds the length; clamped to " +
                  std::to_string(p.length) + "\n";
    }
    p.flip_lmt = p.length;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Event names
// ---------------------------------------------------------------------------

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kImprovedPsl: return "improved-psl";
    case EventKind::kPhaseSwitch: return "phase-switch";
    case EventKind::kLocalBestImproved: return "local-best-improved";
  }
  return "unknown";
}

EventKind event_kind_from_string(const std::string& name) {
  if (name == "improved-psl") return EventKind::kImprovedPsl;
  if (name == "phase-switch") return EventKind::kPhaseSwitch;
  if (name == "local-best-improved") return EventKind::kLocalBestImproved;
  throw ParseError("unknown event kind '" + name + "'");
}

// ---------------------------------------------------------------------------
// Random sequences and perturbation
// ---------------------------------------------------------------------------

BinarySequence random_sequence(uint32_t length, Rng& rng) {
  if (length < kMinLength || length > kMaxLength) {
    throw ConfigError("length " + std::to_string(length) +
                      " out of supported range [" + std::to_string(kMinLength) +
                      ", " + std::to_string(kMaxLength) + "]");
  }
  std::vector<int8_t> elems(length);
  for (uint32_t i = 0; i < length; ++i) elems[i] = rng.spin();
  return BinarySequence(std::move(elems));
}

void flip_random_distinct(BinarySequence& s, SidelobeTable& t, uint32_t count,
                          Rng& rng) {
  const uint32_t L = s.length();
  if (count > L) {
    throw ConfigError("cannot flip " + std::to_string(count) +
                      " distinct positions in a sequence of length " +
                      std::to_string(L));
  }
  std::vector<uint8_t> used(L, 0);
  uint32_t done = 0;
  while (done < count) {
    const uint32_t pos = static_cast<uint32_t>(rng.bounded(L));
    if (used[pos]) continue;
    used[pos] = 1;
    apply_flip(s, t, pos);
    ++done;
  }
}

// ---------------------------------------------------------------------------
// Neighborhood scan
// ---------------------------------------------------------------------------

namespace {

struct ScanJob {
  const int8_t* seq = nullptr;
  const int32_t* table = nullptr;
  uint32_t length = 0;
  uint32_t start = 0;
  uint32_t n = 0;
  const double* lut = nullptr;
  double* values = nullptr;  // slot i = fitness of neighbor (start + i) % L
  int32_t* psls = nullptr;
};

void scan_chunk(const ScanJob& job, uint32_t i_lo, uint32_t i_hi) {
  for (uint32_t i = i_lo; i < i_hi; ++i) {
    const uint32_t pos = (job.start + i) % job.length;
    const NeighborEval e =
        detail::eval_flip(job.seq, job.table, job.length, pos, job.lut);
    job.values[i] = e.fitness;
    job.psls[i] = e.psl;
  }
}

// Long-lived worker pool for the per-step scans.  Workers get fixed
// contiguous slices of the offset range 1..n, so each value[i] is computed
// by exactly one thread and the serial reduction below sees identical data
// for any worker count or interleaving.  All sequence mutation happens on
// the coordinating thread between scans.
class ScanPool {
 public:
  explicit ScanPool(uint32_t workers) : workers_(workers) {
    for (uint32_t w = 1; w < workers_; ++w) {
      threads_.emplace_back([this, w] { worker_loop(w); });
    }
  }

  ScanPool(const ScanPool&) = delete;
  ScanPool& operator=(const ScanPool&) = delete;

  ~ScanPool() {
    {
      std::lock_guard<std::mutex> lock(m_);
      stop_ = true;
    }
    cv_work_.notify_all();
    for (auto& t : threads_) t.join();
  }

  void run(const ScanJob& job) {
    if (workers_ == 1) {
      scan_chunk(job, 1, job.n + 1);
      return;
    }
    {
      std::lock_guard<std::mutex> lock(m_);
      job_ = job;
      ++generation_;
      pending_ = workers_ - 1;
    }
    cv_work_.notify_all();
    const auto [lo, hi] = chunk(job.n, 0);
    scan_chunk(job, lo, hi);
    std::unique_lock<std::mutex> lock(m_);
    cv_done_.wait(lock, [this] { return pending_ == 0; });
  }

 private:
  // Offsets 1..n sliced into workers_ contiguous chunks, remainder spread
  // over the leading chunks; returns [lo, hi) for chunk w.
  std::pair<uint32_t, uint32_t> chunk(uint32_t n, uint32_t w) const {
    const uint32_t q = n / workers_;
    const uint32_t r = n % workers_;
    const uint32_t lo = 1 + w * q + std::min(w, r);
    const uint32_t hi = lo + q + (w < r ? 1 : 0);
    return {lo, hi};
  }

  void worker_loop(uint32_t w) {
    uint64_t seen = 0;
    for (;;) {
      ScanJob job;
      {
        std::unique_lock<std::mutex> lock(m_);
        cv_work_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        job = job_;
      }
      const auto [lo, hi] = chunk(job.n, w);
      scan_chunk(job, lo, hi);
      {
        std::lock_guard<std::mutex> lock(m_);
        if (--pending_ == 0) cv_done_.notify_one();
      }
    }
  }

  const uint32_t workers_;
  std::vector<std::thread> threads_;
  std::mutex m_;
  std::condition_variable cv_work_;
  std::condition_variable cv_done_;
  ScanJob job_;
  uint64_t generation_ = 0;
  uint32_t pending_ = 0;
  bool stop_ = false;
};

struct Reduced {
  uint32_t best_i;      // smallest offset attaining the fitness minimum
  double value_step;
  int32_t psl_min;      // smallest neighbor PSL in the scan
  uint32_t psl_i;       // smallest offset attaining it
};

// Serial pass over the scan buffers in ascending offset order.  Strict <
// comparisons implement the smallest-offset tie-break for both criteria.
Reduced reduce_scan(const double* values, const int32_t* psls, uint32_t n,
                    uint32_t length, uint32_t alpha) {
  Reduced r{1, values[1], psls[1], 1};
  for (uint32_t i = 1; i <= n; ++i) {
    if (!std::isfinite(values[i])) {
      throw OverflowError(
          "neighbor fitness is not finite at length " +
          std::to_string(length) + " with exponent " + std::to_string(alpha) +
          "; lower the exponent (alpha2, then alpha1) until |C_k|^alpha "
          "sums stay inside double range");
    }
    if (values[i] < r.value_step) {
      r.value_step = values[i];
      r.best_i = i;
    }
    if (psls[i] < r.psl_min) {
      r.psl_min = psls[i];
      r.psl_i = i;
    }
  }
  return r;
}

}  // namespace

ScanResult neighborhood_scan(const BinarySequence& pivot,
                             const SidelobeTable& table, const PowerTable& pow,
                             uint32_t start, uint32_t n) {
  const uint32_t L = pivot.length();
  if (table.length() != L) {
    throw ConfigError("sidelobe table length does not match sequence length");
  }
  if (start >= L) {
    throw ConfigError("scan start position " + std::to_string(start) +
                      " out of range for length " + std::to_string(L));
  }
  if (n < 1 || n > L) {
    throw ConfigError("scan size must be in [1, length]");
  }
  if (pow.size() < L + 1) {
    throw ConfigError("power table too small for sequence length");
  }
  std::vector<double> values(static_cast<size_t>(n) + 1);
  std::vector<int32_t> psls(static_cast<size_t>(n) + 1);
  ScanJob job{pivot.data(), table.data(), L,           start,
              n,            pow.data(),  values.data(), psls.data()};
  scan_chunk(job, 1, n + 1);
  const Reduced r = reduce_scan(values.data(), psls.data(), n, L, pow.alpha());
  return {(start + r.best_i) % L, r.value_step, r.psl_min,
          (start + r.psl_i) % L};
}

// ---------------------------------------------------------------------------
// The two-phase search
// ---------------------------------------------------------------------------

RunRecord run_search(const SearchParams& params, const SearchHooks& hooks) {
  const SearchParams p = validate_params(params);
  const uint32_t L = p.length;
  const uint32_t n = p.n_lmt;

  Rng rng(p.seed);
  BinarySequence seq =
      p.init ? BinarySequence(*p.init) : random_sequence(L, rng);
  SidelobeTable table = SidelobeTable::build(seq);

  const PowerTable pow1(L, p.alpha1);
  const PowerTable pow2(L, p.alpha2);
  const PowerTable* pow = &pow1;
  uint32_t phase = 1;

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  double value_local = fitness(table, *pow);
  uint64_t nse = 1;

  // Best fitness in the current phase (restart point) and best PSL overall.
  // Both carry their tables so restarts and the final merit factor are O(L)
  // instead of O(L^2).
  BinarySequence local_seq = seq;
  SidelobeTable local_table = table;
  BinarySequence best_seq = seq;
  SidelobeTable best_table = table;
  int32_t psl_best = psl(table);
  uint64_t unimproved = 0;

  std::vector<ConvergenceEvent> events;
  const auto emit = [&](EventKind kind) {
    events.push_back({nse, elapsed(), psl_best, phase, kind});
    if (hooks.on_event) hooks.on_event(events.back());
  };

  std::vector<double> values(static_cast<size_t>(n) + 1);
  std::vector<int32_t> psls(static_cast<size_t>(n) + 1);
  ScanPool pool(p.workers);

  // Stop checks happen at the top of each step, max-nse first, so runs
  // bounded only by max-nse never consult the clock and replay exactly.
  while (!(p.stop.max_nse && nse >= *p.stop.max_nse) &&
         !(p.stop.max_seconds && elapsed() >= *p.stop.max_seconds)) {
    const uint32_t start = static_cast<uint32_t>(rng.bounded(L));
    ScanJob job{seq.data(), table.data(), L,           start,
                n,          pow->data(),  values.data(), psls.data()};
    pool.run(job);
    nse += n;
    const Reduced r =
        reduce_scan(values.data(), psls.data(), n, L, pow->alpha());

    if (r.psl_min < psl_best) {
      psl_best = r.psl_min;
      best_seq = seq;
      best_table = table;
      apply_flip(best_seq, best_table, (start + r.psl_i) % L);
      emit(EventKind::kImprovedPsl);
    }

    // The pivot always moves to the argmin neighbor, uphill or not.
    apply_flip(seq, table, (start + r.best_i) % L);

    if (r.value_step < value_local) {
      value_local = r.value_step;
      local_seq = seq;
      local_table = table;
      unimproved = 0;
      emit(EventKind::kLocalBestImproved);
    } else if (r.value_step > value_local) {
      if (++unimproved > p.ls_lmt) {
        // Restart: back to the best point of this phase, kick it with
        // flip-lmt distinct random flips, and swap the fitness exponent.
        seq = local_seq;
        table = local_table;
        flip_random_distinct(seq, table, p.flip_lmt, rng);
        phase = (phase == 1) ? 2u : 1u;
        pow = (phase == 1) ? &pow1 : &pow2;
        value_local = fitness(table, *pow);
        nse += 1;
        unimproved = 0;
        emit(EventKind::kPhaseSwitch);
      }
    }
    // Equal fitness: not an improvement, not a worsening; counter untouched.

    if (hooks.on_scan) {
      hooks.on_scan({nse, r.value_step, value_local, psl_best, phase});
    }
  }

  return RunRecord{p,
                   std::move(best_seq),
                   psl_best,
                   merit_factor(best_table),
                   nse,
                   elapsed(),
                   std::move(events),
                   kVersion};
}

}  // namespace pslopt
