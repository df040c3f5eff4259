// pslopt command line tool: search for (and check) binary sequences with a
// low peak sidelobe level.

#include <cstdio>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pslopt/errors.hpp"
#include "pslopt/io.hpp"
#include "pslopt/oracle.hpp"
#include "pslopt/search.hpp"
#include "pslopt/sequence.hpp"
#include "pslopt/version.hpp"

namespace {

// Exit codes: 0 success, 1 usage/config, 2 fitness overflow, 3 file I/O or
// parse failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOverflow = 2;
constexpr int kExitIo = 3;

struct SolveOptions {
  pslopt::SearchParams params;
  std::optional<uint64_t> max_nse;
  std::optional<double> max_seconds;
  std::string init_path;
  std::string out_path;
  std::string best_path;
  std::string log_path;
  bool alpha2_given = false;
  bool flip_given = false;
  bool n_given = false;
};

void add_search_flags(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--length,-L", o.params.length, "sequence length")
      ->required()
      ->check(CLI::Range(pslopt::kMinLength, pslopt::kMaxLength));
  cmd->add_option("--seed", o.params.seed, "random seed (default 1)");
  cmd->add_option("--alpha1", o.params.alpha1,
                  "phase-1 fitness exponent (default 4)");
  cmd->add_option("--alpha2", o.params.alpha2,
                  "phase-2 fitness exponent (default 13/11/10 by length)");
  cmd->add_option("--ls-lmt", o.params.ls_lmt,
                  "worsening steps before a phase switch (default 2000)");
  cmd->add_option("--flip-lmt", o.params.flip_lmt,
                  "random flips at a phase switch (default 10)");
  cmd->add_option("--n-lmt", o.params.n_lmt,
                  "neighborhood positions per scan (default min(L, 1024))");
  cmd->add_option("--workers", o.params.workers,
                  "scan worker threads (default 1)");
  cmd->add_option("--max-nse", o.max_nse,
                  "stop after this many sequence evaluations");
  cmd->add_option("--max-seconds", o.max_seconds,
                  "stop after this much wall-clock time");
}

// Length-dependent defaults apply only where the user did not say otherwise.
void finish_params(CLI::App* cmd, SolveOptions& o) {
  const pslopt::SearchParams defaults =
      pslopt::default_params(o.params.length);
  if (!cmd->count("--alpha2")) o.params.alpha2 = defaults.alpha2;
  if (!cmd->count("--flip-lmt")) o.params.flip_lmt = defaults.flip_lmt;
  if (!cmd->count("--n-lmt")) o.params.n_lmt = defaults.n_lmt;
  o.params.stop.max_nse = o.max_nse;
  o.params.stop.max_seconds = o.max_seconds;
}

int run_solve(CLI::App* cmd, SolveOptions& o) {
  finish_params(cmd, o);
  if (!o.init_path.empty()) {
    const pslopt::BinarySequence init = pslopt::io::read_sequence(o.init_path);
    o.params.init =
        std::vector<int8_t>(init.elements().begin(), init.elements().end());
  }
  std::string warnings;
  const pslopt::SearchParams params =
      pslopt::validate_params(o.params, &warnings);
  if (!warnings.empty()) std::fputs(warnings.c_str(), stderr);

  pslopt::SearchHooks hooks;
  if (!o.log_path.empty()) {
    std::remove(o.log_path.c_str());  // one run per log file
    hooks.on_event = [&o](const pslopt::ConvergenceEvent& e) {
      pslopt::io::append_convergence_csv(o.log_path, e);
    };
  }

  const pslopt::RunRecord record = pslopt::run_search(params, hooks);

  if (!o.out_path.empty()) pslopt::io::write_run_record(o.out_path, record);
  if (!o.best_path.empty()) {
    pslopt::io::write_sequence(o.best_path, record.solution_best);
  }
  std::printf("PSL=%d NSE=%llu MF=%.6f elapsed=%.3fs\n", record.psl_best,
              static_cast<unsigned long long>(record.nse),
              record.merit_factor, record.elapsed_seconds);
  return kExitOk;
}

int run_verify(const std::string& path, bool histogram) {
  const pslopt::BinarySequence seq = pslopt::io::read_sequence(path);
  const pslopt::oracle::SequenceReport rep =
      pslopt::oracle::verify_sequence(seq);
  // psl < sqrt(L) iff psl^2 < L for non-negative integers; avoids FP rounding.
  const bool below_sqrt =
      static_cast<int64_t>(rep.psl) * rep.psl < static_cast<int64_t>(rep.length);
  std::printf("L=%u PSL=%d MF=%.6f PSL<sqrt(L): %s\n", rep.length, rep.psl,
              rep.merit_factor, below_sqrt ? "yes" : "no");
  if (histogram) {
    for (size_t a = 0; a < rep.sidelobe_histogram.size(); ++a) {
      std::printf("|C|=%zu: %llu\n", a,
                  static_cast<unsigned long long>(rep.sidelobe_histogram[a]));
    }
  }
  return kExitOk;
}

int run_exhaustive(uint32_t length, uint32_t workers,
                   const std::string& out_path) {
  const pslopt::oracle::ExhaustiveResult res =
      pslopt::oracle::exhaustive_psl(length, workers);
  std::printf("L=%u optimal-PSL=%d\n", length, res.optimal_psl);
  std::printf("witness=%s\n",
              pslopt::io::format_sequence(res.witness).c_str());
  if (!out_path.empty()) pslopt::io::write_sequence(out_path, res.witness);
  return kExitOk;
}

struct BenchOptions {
  SolveOptions solve;
  uint32_t runs = 10;
  std::string mode = "two-phase";
};

int run_bench(CLI::App* cmd, BenchOptions& b) {
  finish_params(cmd, b.solve);
  pslopt::SearchParams params = b.solve.params;
  if (b.mode == "single-alpha1") {
    params.alpha2 = params.alpha1;
  } else if (b.mode == "single-alpha2") {
    params.alpha1 = params.alpha2;
  } else if (b.mode != "two-phase") {
    throw pslopt::ConfigError("unknown bench mode '" + b.mode + "'");
  }
  std::string warnings;
  params = pslopt::validate_params(params, &warnings);
  if (!warnings.empty()) std::fputs(warnings.c_str(), stderr);

  std::printf("mode=%s L=%u runs=%u alpha1=%u alpha2=%u\n", b.mode.c_str(),
              params.length, b.runs, params.alpha1, params.alpha2);
  uint64_t total_nse = 0;
  double total_seconds = 0.0;
  uint64_t psl_sum = 0;
  int32_t psl_min = 0, psl_max = 0;
  for (uint32_t r = 0; r < b.runs; ++r) {
    pslopt::SearchParams run_params = params;
    run_params.seed = params.seed + r;
    const pslopt::RunRecord rec = pslopt::run_search(run_params);
    std::printf("run seed=%llu psl=%d nse=%llu elapsed=%.3fs mf=%.4f\n",
                static_cast<unsigned long long>(run_params.seed), rec.psl_best,
                static_cast<unsigned long long>(rec.nse), rec.elapsed_seconds,
                rec.merit_factor);
    std::fflush(stdout);
    total_nse += rec.nse;
    total_seconds += rec.elapsed_seconds;
    psl_sum += static_cast<uint64_t>(rec.psl_best);
    if (r == 0 || rec.psl_best < psl_min) psl_min = rec.psl_best;
    if (r == 0 || rec.psl_best > psl_max) psl_max = rec.psl_best;
  }
  std::printf("psl mean=%.3f min=%d max=%d evals-per-sec=%.1f\n",
              static_cast<double>(psl_sum) / b.runs, psl_min, psl_max,
              static_cast<double>(total_nse) / total_seconds);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary sequences with low peak sidelobe level"};
  app.set_version_flag("--version", pslopt::kVersion);
  app.require_subcommand(1);

  SolveOptions solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "run the two-phase search");
  add_search_flags(solve, solve_opts);
  solve->add_option("--init", solve_opts.init_path,
                    "warm-start sequence file (skips the random pivot)");
  solve->add_option("--out", solve_opts.out_path, "write the run record here");
  solve->add_option("--best", solve_opts.best_path,
                    "write the best sequence here");
  solve->add_option("--log", solve_opts.log_path,
                    "write convergence events here as CSV (overwritten)");

  std::string verify_path;
  bool verify_hist = false;
  CLI::App* verify =
      app.add_subcommand("verify", "recompute the figures of merit of a sequence file");
  verify->add_option("file", verify_path, "sequence file")->required();
  verify->add_flag("--histogram", verify_hist,
                   "also print the |C_k| histogram");

  uint32_t exh_length = 0;
  uint32_t exh_workers = 1;
  std::string exh_out;
  CLI::App* exhaustive = app.add_subcommand(
      "exhaustive", "exact optimal PSL by enumeration (length <= 28)");
  exhaustive->add_option("--length,-L", exh_length, "sequence length")
      ->required();
  exhaustive->add_option("--workers", exh_workers, "enumeration threads");
  exhaustive->add_option("--out", exh_out, "write the witness sequence here");

  BenchOptions bench_opts;
  CLI::App* bench =
      app.add_subcommand("bench", "repeated runs with summary statistics");
  add_search_flags(bench, bench_opts.solve);
  bench->add_option("--runs", bench_opts.runs, "number of runs (default 10)")
      ->check(CLI::Range(1u, 1000000u));
  bench->add_option("--mode", bench_opts.mode,
                    "two-phase | single-alpha1 | single-alpha2")
      ->check(CLI::IsMember({"two-phase", "single-alpha1", "single-alpha2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve, solve_opts);
    if (verify->parsed()) return run_verify(verify_path, verify_hist);
    if (exhaustive->parsed()) {
      return run_exhaustive(exh_length, exh_workers, exh_out);
    }
    if (bench->parsed()) return run_bench(bench, bench_opts);
  } catch (const pslopt::OverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOverflow;
  } catch (const pslopt::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const pslopt::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const pslopt::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
