// noma_sched: NOMA downlink scheduling studies.
//
//   noma_sched gap  [--config PATH] [--seed U64] [--trials N] [--out DIR]
//   noma_sched oups [--config PATH] [--seed U64] [--slots T] [--allocator A] [--out DIR]

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "noma/config.hpp"
#include "noma/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<std::int64_t> slots;
  std::optional<std::string> allocator;
  std::string out_dir = "out";
  std::string slot_log_dir;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario file (key = value)");
  cmd->add_option("--seed", args.seed, "RNG seed (overrides the config)");
  cmd->add_option("--trials", args.trials, "Number of trials");
  cmd->add_option("--slots", args.slots, "Slots per trial");
  cmd->add_option("--allocator", args.allocator, "uspa, oracle or oma");
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_flag("--no-timing", args.no_timing, "Write zero timings so outputs are byte-reproducible");
}

noma::ScenarioConfig resolve(const CommonArgs& args, noma::ScenarioConfig defaults) {
  noma::ScenarioConfig config = args.config_path.empty() ? std::move(defaults) : noma::load_config(args.config_path);
  if (args.seed) config.fading.rng_seed = *args.seed;
  if (args.trials) config.trials = *args.trials;
  if (args.slots) config.slots = *args.slots;
  if (args.allocator) config.allocator = noma::parse_allocator(*args.allocator);
  noma::validate(config);
  return config;
}

int run_gap(const CommonArgs& args) {
  const auto config = resolve(args, noma::ScenarioConfig::gap_scenario());
  noma::GapOptions options;
  options.threads = noma::worker_threads();
  options.measure_time = !args.no_timing;
  const auto report = noma::run_gap_study(config, config.trials, options);
  noma::write_gap_outputs(args.out_dir, config, report);

  std::printf("trials            %zu\n", report.rows.size());
  std::printf("mean gap          %.6f bps/Hz\n", report.mean_abs_gap);
  std::printf("mean relative gap %.4f %%\n", 100.0 * report.mean_rel_gap);
  std::printf("selected users    uspa / grid oracle\n");
  for (std::size_t k = 1; k < report.selected_hist_uspa.size(); ++k)
    std::printf("  %zu               %lld / %lld\n", k, static_cast<long long>(report.selected_hist_uspa[k]),
                static_cast<long long>(report.selected_hist_oracle[k]));
  if (options.measure_time)
    std::printf("grid oracle / uspa median call time: %.1fx (grid search, not a GP solver)\n", report.time_ratio);
  return 0;
}

int run_oups(const CommonArgs& args, bool allocator_given) {
  const auto config = resolve(args, noma::ScenarioConfig::qos_scenario());
  noma::OupsOptions options;
  options.threads = noma::worker_threads();
  options.measure_time = !args.no_timing;
  if (allocator_given) options.variants = {config.allocator};
  if (!args.slot_log_dir.empty()) options.slot_log_dir = args.slot_log_dir;
  const auto results = noma::run_oups_study(config, options);
  noma::write_oups_outputs(args.out_dir, config, results);

  for (const auto& r : results) {
    std::printf("%-6s avg weighted sum rate %.4f bps/Hz\n", std::string(noma::to_string(r.kind)).c_str(),
                r.summary.avg_wsr);
    for (std::size_t i = 0; i < r.summary.avg_rate.size(); ++i)
      std::printf("         user %zu  rate %.4f  requirement %.2f  slack %+.4f\n", i, r.summary.avg_rate[i],
                  config.users[i].min_avg_rate, r.summary.qos_slack[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint user selection, power allocation and opportunistic scheduling for downlink NOMA"};
  app.require_subcommand(1);

  CommonArgs gap_args;
  auto* gap = app.add_subcommand("gap", "Heuristic vs grid-oracle comparison on random snapshots");
  add_common(gap, gap_args);

  CommonArgs oups_args;
  auto* oups = app.add_subcommand("oups", "Opportunistic scheduling with minimum-rate constraints");
  add_common(oups, oups_args);
  oups->add_option("--slot-log", oups_args.slot_log_dir, "Directory for per-slot logs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gap->parsed()) return run_gap(gap_args);
    return run_oups(oups_args, oups_args.allocator.has_value());
  } catch (const noma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
