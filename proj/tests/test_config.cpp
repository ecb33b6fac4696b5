#include <doctest.h>

#include <string>

#include "noma/config.hpp"

using namespace noma;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("defaults describe the five-user QoS scenario") {
  const auto c = parse_config("");
  REQUIRE(c.users.size() == 5);
  CHECK(c.users[0].distance_m == 20.0);
  CHECK(c.users[4].distance_m == 500.0);
  CHECK(c.users[3].min_avg_rate == 4.0);
  CHECK(c.p_max == doctest::Approx(19.952623149688797).epsilon(1e-14));  // 43 dBm
  CHECK(c.users[0].noise_power == doctest::Approx(3.9810717055349693e-14).epsilon(1e-14));  // -104 dBm
  CHECK(c.step.kind == StepKind::harmonic);
  CHECK(c.step.zeta0 == 1.0);
  CHECK(c.fading.shadowing_sigma_db == 8.0);
}

TEST_CASE("parse a full scenario") {
  const auto c = parse_config(R"(
# two users
pmax_dbm = 30
slots = 200
seed = 42
allocator = oma
step_kind = constant
step_zeta0 = 0.1
shadowing_sigma_db = 0
grid_resolution = 51
noise_dbm = -100
user = weight=0.5 rbar_bps_hz=1 distance_m=50
user = weight=0.5 distance_m=300 noise_dbm=-90   # noisier receiver
)");
  REQUIRE(c.users.size() == 2);
  CHECK(c.p_max == doctest::Approx(1.0));
  CHECK(c.slots == 200);
  CHECK(c.fading.rng_seed == 42);
  CHECK(c.allocator == AllocatorKind::oma);
  CHECK(c.step.kind == StepKind::constant);
  CHECK(c.grid.resolution == 51);
  CHECK(c.users[0].noise_power == doctest::Approx(1e-13));
  CHECK(c.users[1].noise_power == doctest::Approx(1e-12));
  CHECK(c.users[1].min_avg_rate == 0.0);
}

TEST_CASE("random users") {
  const auto c = parse_config("random_users = 4\ndistance_min_m = 30\ntrials = 10\n");
  REQUIRE(c.random_users.has_value());
  CHECK(c.random_users->count == 4);
  CHECK(c.random_users->distance_min_m == 30.0);
  CHECK(c.random_users->distance_max_m == 500.0);
  CHECK(c.users.empty());
  CHECK(field_of("random_users = 3\nuser = distance_m=10\n") == "users");
}

TEST_CASE("errors carry field paths") {
  CHECK(field_of("user = weight=1 distance_m=-5\n") == "users[0].distance_m");
  CHECK(field_of("user = weight=1 distance_m=5\nuser = weight=x distance_m=5\n") == "users[1].weight");
  CHECK(field_of("user = weight=1\n") == "users[0].distance_m");
  CHECK(field_of("user = weight=0 distance_m=3\n") == "users");
  CHECK(field_of("slots = 0\n") == "slots");
  CHECK(field_of("slots = ten\n") == "slots");
  CHECK(field_of("allocator = gp\n") == "allocator");
  CHECK(field_of("bogus = 1\n") == "bogus");
  CHECK(field_of("just words\n") == "line 1");
  CHECK(field_of("shadowing_sigma_db = -1\n") == "shadowing_sigma_db");
  CHECK(field_of("user = weight=1 distance_m=5 colour=blue\n") == "users[0].colour");
}

TEST_CASE("canonical text round-trips") {
  auto c = parse_config("pmax_dbm = 41.3\nseed = 7\nuser = weight=0.3 distance_m=123.4 noise_dbm=-101.7\n");
  const std::string text = to_config_text(c);
  const auto again = parse_config(text);
  CHECK(to_config_text(again) == text);
  CHECK(again.p_max == c.p_max);
  CHECK(again.users[0].noise_power == c.users[0].noise_power);
  CHECK(config_hash(again) == config_hash(c));

  c.fading.rng_seed = 8;
  CHECK(config_hash(c) != config_hash(again));

  const auto g = ScenarioConfig::gap_scenario();
  CHECK(to_config_text(parse_config(to_config_text(g))) == to_config_text(g));
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
