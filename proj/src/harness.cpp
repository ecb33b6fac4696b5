#include "noma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "noma/baselines.hpp"
#include "noma/oracle.hpp"
#include "noma/uspa.hpp"

namespace noma {
namespace {

constexpr std::uint64_t kUserDrawStream = 0x75736572;  // "user"

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

template <typename F>
auto timed(bool enabled, std::int64_t& ns, F&& f) {
  if (!enabled) {
    ns = 0;
    return f();
  }
  const auto start = std::chrono::steady_clock::now();
  auto result = f();
  const auto stop = std::chrono::steady_clock::now();
  ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
  return result;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_double(v[i]);
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(v[i]);
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
}

}  // namespace

unsigned worker_threads() {
  if (const char* env = std::getenv("NOMA_SCHED_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<UserProfile> trial_users(const ScenarioConfig& config, std::uint64_t trial) {
  if (!config.random_users) return config.users;
  const auto& spec = *config.random_users;
  RandomStream rng = RandomStream(config.fading.rng_seed).split(trial).split(kUserDrawStream);
  std::vector<UserProfile> users(static_cast<std::size_t>(spec.count));
  double total = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    users[i].id = static_cast<int>(i);
    users[i].weight = rng.uniform(0.0, 1.0);
    users[i].distance_m = rng.uniform(spec.distance_min_m, spec.distance_max_m);
    users[i].noise_power = dbm_to_watts(spec.noise_dbm);
    total += users[i].weight;
  }
  if (total > 0.0)
    for (auto& u : users) u.weight /= total;
  return users;
}

GapReport run_gap_study(const ScenarioConfig& config, std::int64_t n_trials, const GapOptions& options) {
  validate(config);
  if (n_trials < 1) throw ConfigError("trials", "must be >= 1");
  const std::size_t n_users =
      config.random_users ? static_cast<std::size_t>(config.random_users->count) : config.users.size();
  if (n_users > kGridMaxUsers) throw ConfigError("users", "gap study supports at most 6 users");

  GapReport report;
  report.rows.resize(static_cast<std::size_t>(n_trials));
  parallel_for(report.rows.size(), options.threads, [&](std::size_t k) {
    const auto trial = static_cast<std::uint64_t>(k);
    const auto users = trial_users(config, trial);
    ChannelProcess process(users, config.fading, trial);
    const ChannelState channel = process.next();
    EffectiveWeights weights;
    for (const auto& u : users) weights.values.push_back(u.weight);

    GapRow& row = report.rows[k];
    row.trial = static_cast<std::int64_t>(k);
    const Allocation heuristic =
        timed(options.measure_time, row.t_uspa_ns, [&] { return uspa_allocate(channel, weights, config.p_max); });
    const GridResult oracle =
        timed(options.measure_time, row.t_oracle_ns, [&] { return grid_q2(channel, weights, config.p_max, config.grid); });
    row.wsr_uspa = weighted_sum(rates(heuristic, channel), weights.values);
    row.wsr_oracle = oracle.wsr;
    row.n_sel_uspa = static_cast<int>(heuristic.selected_count());
    row.n_sel_oracle = static_cast<int>(oracle.allocation.selected_count());
  });

  report.selected_hist_uspa.assign(n_users + 1, 0);
  report.selected_hist_oracle.assign(n_users + 1, 0);
  std::vector<double> t_uspa;
  std::vector<double> t_oracle;
  for (const auto& row : report.rows) {
    const double gap = row.wsr_oracle - row.wsr_uspa;
    report.mean_abs_gap += gap;
    report.mean_rel_gap += row.wsr_oracle > 0.0 ? gap / row.wsr_oracle : 0.0;
    ++report.selected_hist_uspa[static_cast<std::size_t>(row.n_sel_uspa)];
    ++report.selected_hist_oracle[static_cast<std::size_t>(row.n_sel_oracle)];
    t_uspa.push_back(static_cast<double>(row.t_uspa_ns));
    t_oracle.push_back(static_cast<double>(row.t_oracle_ns));
  }
  const auto count = static_cast<double>(report.rows.size());
  report.mean_abs_gap /= count;
  report.mean_rel_gap /= count;
  report.median_uspa_ns = median(std::move(t_uspa));
  report.median_oracle_ns = median(std::move(t_oracle));
  report.time_ratio = report.median_uspa_ns > 0.0 ? report.median_oracle_ns / report.median_uspa_ns : 0.0;
  return report;
}

std::vector<VariantResult> run_oups_study(const ScenarioConfig& config, const OupsOptions& options) {
  validate(config);
  if (config.random_users) throw ConfigError("users", "the scheduling study needs explicit users");
  if (config.trials != 1) throw ConfigError("trials", "the scheduling study runs exactly one trial per seed");

  std::vector<AllocatorKind> kinds;
  for (const auto kind : options.variants)
    if (kind != AllocatorKind::oracle || config.users.size() <= kGridMaxUsers) kinds.push_back(kind);
  if (!options.slot_log_dir.empty()) std::filesystem::create_directories(options.slot_log_dir);

  std::vector<VariantResult> results(kinds.size());
  parallel_for(kinds.size(), options.threads, [&](std::size_t v) {
    RunOptions run_options;
    run_options.measure_time = options.measure_time;
    std::ofstream log;
    if (!options.slot_log_dir.empty()) {
      log = open_output(options.slot_log_dir / ("slots_" + std::string(to_string(kinds[v])) + ".csv"));
      log << "trial,t,selected,powers,rates,lambda,wsr\n";
      run_options.sink = [&log](const SlotLog& s) {
        log << s.trial << ',' << s.t << ',' << join(s.selected) << ',' << join(s.powers) << ','
            << join(s.rates) << ',' << join(s.lambda) << ',' << format_double(s.wsr) << '\n';
      };
    }
    results[v] = {kinds[v], run(config, make_allocator(kinds[v], config.grid), run_options)};
  });
  return results;
}

std::vector<OupsRow> oups_rows(const std::vector<VariantResult>& results) {
  std::vector<OupsRow> rows;
  for (const auto& r : results) {
    for (const auto& cp : r.summary.checkpoints) {
      for (std::size_t i = 0; i < cp.avg_rate.size(); ++i) {
        rows.push_back({std::string(to_string(r.kind)), cp.t, static_cast<int>(i), cp.avg_rate[i],
                        cp.lambda[i], cp.avg_wsr});
      }
    }
  }
  return rows;
}

std::string manifest_json(const Manifest& m) {
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << m.config_hash;
  nlohmann::json j;
  j["study"] = m.study;
  j["config_hash"] = hash.str();
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["files"] = m.files;
  return j.dump(2) + "\n";
}

void write_gap_outputs(const std::filesystem::path& dir, const ScenarioConfig& config, const GapReport& report) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "gap.csv");
    write_gap_csv(out, report.rows);
  }
  {
    auto out = open_output(dir / "gap_summary.csv");
    out << "metric,value\n"
        << "trials," << report.rows.size() << '\n'
        << "mean_abs_gap_bps_hz," << format_double(report.mean_abs_gap) << '\n'
        << "mean_rel_gap," << format_double(report.mean_rel_gap) << '\n';
    for (std::size_t k = 0; k < report.selected_hist_uspa.size(); ++k) {
      out << "n_sel_uspa_" << k << ',' << report.selected_hist_uspa[k] << '\n'
          << "n_sel_oracle_" << k << ',' << report.selected_hist_oracle[k] << '\n';
    }
    // Grid-oracle vs heuristic wall clock; not comparable with a GP solver.
    out << "median_uspa_ns," << format_double(report.median_uspa_ns) << '\n'
        << "median_grid_oracle_ns," << format_double(report.median_oracle_ns) << '\n'
        << "grid_oracle_over_uspa_time_ratio," << format_double(report.time_ratio) << '\n';
  }
  write_text(dir / "config.txt", to_config_text(config));
  write_text(dir / "manifest.json",
             manifest_json({"gap", config_hash(config), config.fading.rng_seed, NOMA_VERSION,
                            {"gap.csv", "gap_summary.csv", "config.txt"}}));
}

void write_oups_outputs(const std::filesystem::path& dir, const ScenarioConfig& config,
                        const std::vector<VariantResult>& results) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "oups.csv");
    write_oups_csv(out, oups_rows(results));
  }
  {
    auto out = open_output(dir / "oups_summary.csv");
    out << "variant,user,rate_avg,rbar,qos_slack,lambda,wsr_avg\n";
    for (const auto& r : results) {
      for (std::size_t i = 0; i < r.summary.avg_rate.size(); ++i) {
        out << to_string(r.kind) << ',' << i << ',' << format_double(r.summary.avg_rate[i]) << ','
            << format_double(config.users[i].min_avg_rate) << ',' << format_double(r.summary.qos_slack[i]) << ','
            << format_double(r.summary.lambda[i]) << ',' << format_double(r.summary.avg_wsr) << '\n';
      }
    }
  }
  {
    auto out = open_output(dir / "timing.csv");
    out << "variant,median_call_ns\n";
    for (const auto& r : results) out << to_string(r.kind) << ',' << format_double(r.summary.median_call_ns) << '\n';
  }
  write_text(dir / "config.txt", to_config_text(config));
  write_text(dir / "manifest.json",
             manifest_json({"oups", config_hash(config), config.fading.rng_seed, NOMA_VERSION,
                            {"oups.csv", "oups_summary.csv", "timing.csv", "config.txt"}}));
}

}  // namespace noma
