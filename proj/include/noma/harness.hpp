#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "noma/config.hpp"
#include "noma/csv.hpp"
#include "noma/oups.hpp"

namespace noma {

/// Worker count from NOMA_SCHED_THREADS, else the hardware concurrency.
unsigned worker_threads();

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Per-trial users for random_users scenarios, drawn from the trial's own
/// substream; explicit users are returned unchanged.
std::vector<UserProfile> trial_users(const ScenarioConfig& config, std::uint64_t trial);

struct GapOptions {
  unsigned threads = 1;
  bool measure_time = true;
};

struct GapReport {
  std::vector<GapRow> rows;
  double mean_abs_gap = 0.0;       // mean of (oracle - uspa)
  double mean_rel_gap = 0.0;       // mean of (oracle - uspa) / oracle
  std::vector<std::int64_t> selected_hist_uspa;    // index = selected-user count
  std::vector<std::int64_t> selected_hist_oracle;
  double median_uspa_ns = 0.0;
  double median_oracle_ns = 0.0;
  double time_ratio = 0.0;         // oracle / uspa median call time
};

/// Single-slot comparison of the heuristic against the grid oracle with
/// lambda = 0, one channel draw per trial.
GapReport run_gap_study(const ScenarioConfig& config, std::int64_t n_trials, const GapOptions& options = {});

struct VariantResult {
  AllocatorKind kind = AllocatorKind::uspa;
  Summary summary;
};

struct OupsOptions {
  unsigned threads = 1;
  bool measure_time = true;
  std::vector<AllocatorKind> variants{AllocatorKind::uspa, AllocatorKind::oracle, AllocatorKind::oma};
  // Optional per-variant slot logs (empty = off).
  std::filesystem::path slot_log_dir;
};

/// Runs each scheduler variant on the same channel trace. The oracle
/// variant is skipped when the user count exceeds the grid guard.
std::vector<VariantResult> run_oups_study(const ScenarioConfig& config, const OupsOptions& options = {});

std::vector<OupsRow> oups_rows(const std::vector<VariantResult>& results);

struct Manifest {
  std::string study;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::string> files;
};

/// gap.csv, gap_summary.csv, config.txt, manifest.json
void write_gap_outputs(const std::filesystem::path& dir, const ScenarioConfig& config, const GapReport& report);

/// oups.csv, oups_summary.csv, timing.csv, config.txt, manifest.json
void write_oups_outputs(const std::filesystem::path& dir, const ScenarioConfig& config,
                        const std::vector<VariantResult>& results);

std::string manifest_json(const Manifest& manifest);

}  // namespace noma
