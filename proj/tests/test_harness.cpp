#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "noma/harness.hpp"

using namespace noma;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("noma_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

ScenarioConfig tiny_gap(int users) {
  ScenarioConfig c = ScenarioConfig::gap_scenario();
  c.random_users->count = users;
  c.grid = {101, 3};
  return c;
}

}  // namespace

TEST_CASE("random trial users are normalized and reproducible") {
  const auto c = tiny_gap(5);
  const auto a = trial_users(c, 3);
  const auto b = trial_users(c, 3);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].weight == b[i].weight);
    CHECK(a[i].distance_m == b[i].distance_m);
    CHECK(a[i].distance_m >= 20.0);
    CHECK(a[i].distance_m <= 500.0);
    total += a[i].weight;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(trial_users(c, 4)[0].distance_m != a[0].distance_m);
}

TEST_CASE("gap study with a single user has no gap") {
  const auto report = run_gap_study(tiny_gap(1), 1);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].wsr_uspa == report.rows[0].wsr_oracle);
  CHECK(report.mean_abs_gap == 0.0);
}

TEST_CASE("gap study histograms partition the trials") {
  GapOptions options;
  options.threads = 3;
  const auto report = run_gap_study(tiny_gap(4), 40, options);
  CHECK(std::accumulate(report.selected_hist_uspa.begin(), report.selected_hist_uspa.end(), std::int64_t{0}) == 40);
  CHECK(std::accumulate(report.selected_hist_oracle.begin(), report.selected_hist_oracle.end(), std::int64_t{0}) == 40);
  for (std::size_t k = 3; k < report.selected_hist_uspa.size(); ++k) CHECK(report.selected_hist_uspa[k] == 0);

  // Thread count does not change results.
  GapOptions serial;
  serial.measure_time = false;
  options.measure_time = false;
  const auto a = run_gap_study(tiny_gap(4), 40, serial);
  const auto b = run_gap_study(tiny_gap(4), 40, options);
  CHECK(a.rows == b.rows);
}

TEST_CASE("gap study rejects instances beyond the oracle guard") {
  CHECK_THROWS_AS(run_gap_study(tiny_gap(7), 1), ConfigError);
}

TEST_CASE("csv rows round-trip") {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<GapRow> gap;
  std::vector<OupsRow> oups;
  for (int i = 0; i < 300; ++i) {
    gap.push_back({i, u(rng), std::ldexp(u(rng), -40), i % 3, i % 4, i * 1000, i * 7});
    oups.push_back({i % 2 ? "uspa" : "oma", i, i % 5, u(rng), std::abs(u(rng)) * 1e-9, u(rng)});
  }
  std::ostringstream out1;
  write_gap_csv(out1, gap);
  std::istringstream in1(out1.str());
  const auto gap_back = read_gap_csv(in1);
  CHECK(gap_back == gap);
  std::ostringstream again1;
  write_gap_csv(again1, gap_back);
  CHECK(again1.str() == out1.str());

  std::ostringstream out2;
  write_oups_csv(out2, oups);
  std::istringstream in2(out2.str());
  const auto oups_back = read_oups_csv(in2);
  CHECK(oups_back == oups);
  std::ostringstream again2;
  write_oups_csv(again2, oups_back);
  CHECK(again2.str() == out2.str());

  std::istringstream bad("nope\n1,2\n");
  CHECK_THROWS(read_gap_csv(bad));
}

TEST_CASE("scheduling study with one slot has one trajectory point per user") {
  ScenarioConfig c = ScenarioConfig::qos_scenario();
  c.slots = 1;
  const auto results = run_oups_study(c);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) CHECK(r.summary.checkpoints.size() == 1);
  CHECK(oups_rows(results).size() == 15);
}

TEST_CASE("scheduling study rejects multi-trial configs and skips the oracle for large N") {
  ScenarioConfig c = ScenarioConfig::qos_scenario();
  c.trials = 2;
  CHECK_THROWS_AS(run_oups_study(c), ConfigError);

  c.trials = 1;
  c.slots = 3;
  for (int i = 5; i < 8; ++i) c.users.push_back({i, 1.0, 0.0, 100.0 + i, c.users[0].noise_power});
  const auto results = run_oups_study(c);
  REQUIRE(results.size() == 2);
  CHECK(results[0].kind == AllocatorKind::uspa);
  CHECK(results[1].kind == AllocatorKind::oma);
}

TEST_CASE("outputs are byte-identical across runs without timing") {
  const auto gap_config = tiny_gap(3);
  const auto dir_a = scratch("a");
  const auto dir_b = scratch("b");
  GapOptions options;
  options.measure_time = false;
  write_gap_outputs(dir_a, gap_config, run_gap_study(gap_config, 20, options));
  write_gap_outputs(dir_b, gap_config, run_gap_study(gap_config, 20, options));
  for (const char* f : {"gap.csv", "gap_summary.csv", "config.txt", "manifest.json"})
    CHECK(slurp(dir_a / f) == slurp(dir_b / f));

  ScenarioConfig oups_config = ScenarioConfig::qos_scenario();
  oups_config.slots = 50;
  OupsOptions oups_options;
  oups_options.measure_time = false;
  oups_options.slot_log_dir = dir_a / "slots";
  write_oups_outputs(dir_a, oups_config, run_oups_study(oups_config, oups_options));
  oups_options.slot_log_dir = dir_b / "slots";
  write_oups_outputs(dir_b, oups_config, run_oups_study(oups_config, oups_options));
  for (const char* f : {"oups.csv", "oups_summary.csv", "timing.csv", "manifest.json", "slots/slots_uspa.csv"})
    CHECK(slurp(dir_a / f) == slurp(dir_b / f));

  const auto manifest = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
  CHECK(manifest["study"] == "oups");
  CHECK(manifest["seed"] == oups_config.fading.rng_seed);
  CHECK(manifest["config_hash"].get<std::string>().size() == 16);

  // The written config regenerates the run.
  const auto reloaded = load_config(dir_a / "config.txt");
  CHECK(config_hash(reloaded) == config_hash(oups_config));

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}
