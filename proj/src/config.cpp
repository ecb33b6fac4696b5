#include "noma/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace noma {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, const std::string& field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
  return value;
}

std::int64_t parse_int(std::string_view text, const std::string& field) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(field, "expected an integer, got '" + std::string(text) + "'");
  return value;
}

std::uint64_t parse_u64(std::string_view text, const std::string& field) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(field, "expected an unsigned integer, got '" + std::string(text) + "'");
  return value;
}

bool parse_bool(std::string_view text, const std::string& field) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(field, "expected true or false");
}

struct UserLine {
  std::size_t index;
  std::map<std::string, std::string, std::less<>> fields;
};

}  // namespace

std::string_view to_string(AllocatorKind kind) {
  switch (kind) {
    case AllocatorKind::uspa: return "uspa";
    case AllocatorKind::oracle: return "oracle";
    case AllocatorKind::oma: return "oma";
  }
  return "uspa";
}

AllocatorKind parse_allocator(std::string_view name) {
  if (name == "uspa") return AllocatorKind::uspa;
  if (name == "oracle") return AllocatorKind::oracle;
  if (name == "oma") return AllocatorKind::oma;
  throw ConfigError("allocator", "unknown allocator '" + std::string(name) + "' (uspa, oracle, oma)");
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ScenarioConfig ScenarioConfig::qos_scenario() {
  ScenarioConfig c;
  const double distances[] = {20.0, 140.0, 260.0, 380.0, 500.0};
  const double rbar[] = {2.0, 2.0, 2.0, 4.0, 4.0};
  for (int i = 0; i < 5; ++i)
    c.users.push_back({i, 1.0, rbar[i], distances[i], dbm_to_watts(-104.0)});
  // Users are placed by distance only, so shadowing is part of the per-slot
  // fading here; a single frozen draw can make the requirements infeasible.
  c.fading.shadowing_per_slot = true;
  c.slots = 10000;
  c.grid = GridSpec{101, 3};
  return c;
}

ScenarioConfig ScenarioConfig::gap_scenario() {
  ScenarioConfig c;
  c.random_users = RandomUserSpec{};
  c.fading.shadowing_per_slot = false;
  c.slots = 1;
  c.trials = 1000;
  c.grid = GridSpec{1001, 3};
  return c;
}

void validate(const ScenarioConfig& c) {
  if (!c.random_users) {
    validate_profiles(c.users);
  } else {
    const auto& r = *c.random_users;
    if (r.count < 1) throw ConfigError("random_users", "must be >= 1");
    if (!(r.distance_min_m > 0.0)) throw ConfigError("distance_min_m", "must be > 0");
    if (!(r.distance_max_m >= r.distance_min_m))
      throw ConfigError("distance_max_m", "must be >= distance_min_m");
    if (!std::isfinite(r.noise_dbm)) throw ConfigError("noise_dbm", "must be finite");
  }
  if (!(c.p_max > 0.0) || !std::isfinite(c.p_max)) throw ConfigError("pmax_dbm", "must give a finite positive power");
  if (c.slots < 1) throw ConfigError("slots", "must be >= 1");
  if (c.trials < 1) throw ConfigError("trials", "must be >= 1");
  if (!(c.fading.shadowing_sigma_db >= 0.0)) throw ConfigError("shadowing_sigma_db", "must be >= 0");
  if (!std::isfinite(c.fading.pathloss_const_db)) throw ConfigError("pathloss_const_db", "must be finite");
  if (!std::isfinite(c.fading.pathloss_slope_db)) throw ConfigError("pathloss_slope_db", "must be finite");
  if (c.step.kind != StepKind::custom && !(c.step.zeta0 > 0.0)) throw ConfigError("step_zeta0", "must be > 0");
  if (c.grid.resolution < 2) throw ConfigError("grid_resolution", "must be >= 2");
  if (c.grid.max_subset_size < 1) throw ConfigError("grid_max_subset", "must be >= 1");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c = ScenarioConfig::qos_scenario();
  std::vector<UserLine> user_lines;
  std::optional<double> noise_dbm;
  std::optional<RandomUserSpec> random;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    auto rnd = [&]() -> RandomUserSpec& {
      if (!random) random = RandomUserSpec{};
      return *random;
    };

    if (key == "user") {
      UserLine u{user_lines.size(), {}};
      const std::string at = "users[" + std::to_string(u.index) + "]";
      std::istringstream tokens{std::string(value)};
      std::string token;
      while (tokens >> token) {
        const auto teq = token.find('=');
        if (teq == std::string::npos) throw ConfigError(at, "expected name=value, got '" + token + "'");
        u.fields[token.substr(0, teq)] = token.substr(teq + 1);
      }
      user_lines.push_back(std::move(u));
    } else if (key == "pmax_dbm") {
      c.p_max = dbm_to_watts(parse_double(value, key));
    } else if (key == "pmax_w") {
      c.p_max = parse_double(value, key);
    } else if (key == "noise_dbm") {
      noise_dbm = parse_double(value, key);
    } else if (key == "slots") {
      c.slots = parse_int(value, key);
    } else if (key == "trials") {
      c.trials = parse_int(value, key);
    } else if (key == "seed") {
      c.fading.rng_seed = parse_u64(value, key);
    } else if (key == "allocator") {
      c.allocator = parse_allocator(value);
    } else if (key == "step_kind") {
      if (value == "harmonic") c.step.kind = StepKind::harmonic;
      else if (value == "constant") c.step.kind = StepKind::constant;
      else throw ConfigError(key, "expected harmonic or constant");
    } else if (key == "step_zeta0") {
      c.step.zeta0 = parse_double(value, key);
    } else if (key == "pathloss_const_db") {
      c.fading.pathloss_const_db = parse_double(value, key);
    } else if (key == "pathloss_slope_db") {
      c.fading.pathloss_slope_db = parse_double(value, key);
    } else if (key == "shadowing_sigma_db") {
      c.fading.shadowing_sigma_db = parse_double(value, key);
    } else if (key == "shadowing_per_slot") {
      c.fading.shadowing_per_slot = parse_bool(value, key);
    } else if (key == "grid_resolution") {
      c.grid.resolution = static_cast<int>(parse_int(value, key));
    } else if (key == "grid_max_subset") {
      c.grid.max_subset_size = static_cast<int>(parse_int(value, key));
    } else if (key == "random_users") {
      rnd().count = static_cast<int>(parse_int(value, key));
    } else if (key == "distance_min_m") {
      rnd().distance_min_m = parse_double(value, key);
    } else if (key == "distance_max_m") {
      rnd().distance_max_m = parse_double(value, key);
    } else {
      throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
    }
  }

  if (random && !user_lines.empty())
    throw ConfigError("users", "'user' lines and random_users are mutually exclusive");
  if (random) {
    if (noise_dbm) random->noise_dbm = *noise_dbm;
    c.random_users = random;
    c.users.clear();
  } else if (!user_lines.empty()) {
    c.users.clear();
    for (const auto& line : user_lines) {
      const std::string at = "users[" + std::to_string(line.index) + "]";
      UserProfile u;
      u.id = static_cast<int>(line.index);
      double user_noise_dbm = noise_dbm.value_or(-104.0);
      std::optional<double> user_noise_w;
      bool has_distance = false;
      for (const auto& [name, val] : line.fields) {
        const std::string field = at + "." + name;
        if (name == "id") u.id = static_cast<int>(parse_int(val, field));
        else if (name == "weight") u.weight = parse_double(val, field);
        else if (name == "rbar_bps_hz") u.min_avg_rate = parse_double(val, field);
        else if (name == "distance_m") { u.distance_m = parse_double(val, field); has_distance = true; }
        else if (name == "noise_dbm") user_noise_dbm = parse_double(val, field);
        else if (name == "noise_w") user_noise_w = parse_double(val, field);
        else throw ConfigError(field, "unknown user field");
      }
      if (!has_distance) throw ConfigError(at + ".distance_m", "required");
      u.noise_power = user_noise_w.value_or(dbm_to_watts(user_noise_dbm));
      c.users.push_back(u);
    }
  } else if (noise_dbm) {
    for (auto& u : c.users) u.noise_power = dbm_to_watts(*noise_dbm);
  }

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const ScenarioConfig& c) {
  if (c.step.kind == StepKind::custom)
    throw ConfigError("step_kind", "custom step schedules have no text form");
  std::ostringstream out;
  out << "pmax_w = " << format_double(c.p_max) << '\n'
      << "slots = " << c.slots << '\n'
      << "trials = " << c.trials << '\n'
      << "seed = " << c.fading.rng_seed << '\n'
      << "allocator = " << to_string(c.allocator) << '\n'
      << "step_kind = " << (c.step.kind == StepKind::harmonic ? "harmonic" : "constant") << '\n'
      << "step_zeta0 = " << format_double(c.step.zeta0) << '\n'
      << "pathloss_const_db = " << format_double(c.fading.pathloss_const_db) << '\n'
      << "pathloss_slope_db = " << format_double(c.fading.pathloss_slope_db) << '\n'
      << "shadowing_sigma_db = " << format_double(c.fading.shadowing_sigma_db) << '\n'
      << "shadowing_per_slot = " << (c.fading.shadowing_per_slot ? "true" : "false") << '\n'
      << "grid_resolution = " << c.grid.resolution << '\n'
      << "grid_max_subset = " << c.grid.max_subset_size << '\n';
  if (c.random_users) {
    out << "random_users = " << c.random_users->count << '\n'
        << "distance_min_m = " << format_double(c.random_users->distance_min_m) << '\n'
        << "distance_max_m = " << format_double(c.random_users->distance_max_m) << '\n'
        << "noise_dbm = " << format_double(c.random_users->noise_dbm) << '\n';
  } else {
    for (const auto& u : c.users) {
      out << "user = id=" << u.id << " weight=" << format_double(u.weight)
          << " rbar_bps_hz=" << format_double(u.min_avg_rate)
          << " distance_m=" << format_double(u.distance_m)
          << " noise_w=" << format_double(u.noise_power) << '\n';
    }
  }
  return out.str();
}

std::uint64_t config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : to_config_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace noma
