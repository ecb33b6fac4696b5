#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noma/channel.hpp"
#include "noma/common.hpp"
#include "noma/oracle.hpp"
#include "noma/step.hpp"

namespace noma {

enum class AllocatorKind { uspa, oracle, oma };

std::string_view to_string(AllocatorKind kind);
AllocatorKind parse_allocator(std::string_view name);  // throws ConfigError

/// Users drawn per trial: weights U(0,1) normalized by their sum, distances
/// U(distance_min_m, distance_max_m), no rate requirement.
struct RandomUserSpec {
  int count = 5;
  double distance_min_m = 20.0;
  double distance_max_m = 500.0;
  double noise_dbm = -104.0;
};

struct ScenarioConfig {
  std::vector<UserProfile> users;
  std::optional<RandomUserSpec> random_users;
  double p_max = dbm_to_watts(43.0);  // watts
  FadingParams fading;
  std::int64_t slots = 10000;
  std::int64_t trials = 1;
  StepSchedule step;
  AllocatorKind allocator = AllocatorKind::uspa;
  GridSpec grid;

  /// Five equal-weight users at 20/140/260/380/500 m needing 2/2/2/4/4
  /// bps/Hz, 43 dBm budget, -104 dBm noise, zeta = 1/t, shadowing
  /// redrawn every slot.
  static ScenarioConfig qos_scenario();
  /// Five random users per trial for the heuristic-vs-oracle comparison.
  static ScenarioConfig gap_scenario();
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& config);

/// Parses the flat `key = value` format. Keys carry their unit
/// (pmax_dbm, noise_dbm, rbar_bps_hz, distance_m, ...); users are given as
///   user = weight=1 rbar_bps_hz=2 distance_m=20 noise_dbm=-104
/// Unset keys keep the qos_scenario() defaults unless `random_users` is set.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ScenarioConfig& config);

/// FNV-1a 64 of the canonical text.
std::uint64_t config_hash(const ScenarioConfig& config);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace noma
