#include "noma/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "noma/common.hpp"

namespace noma {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t key) {
  std::uint64_t s = key;
  std::seed_seq seq{static_cast<std::uint32_t>(s = splitmix64(s)),
                    static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(s = splitmix64(s)),
                    static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kShadowStream = 0;
constexpr std::uint64_t kFadingStream = 1;

}  // namespace

void validate_profiles(std::span<const UserProfile> users) {
  if (users.empty()) throw ConfigError("users", "at least one user is required");
  bool any_positive = false;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const auto& u = users[i];
    const std::string at = "users[" + std::to_string(i) + "]";
    if (!std::isfinite(u.weight) || u.weight < 0.0)
      throw ConfigError(at + ".weight", "must be finite and >= 0");
    if (!std::isfinite(u.min_avg_rate) || u.min_avg_rate < 0.0)
      throw ConfigError(at + ".rbar_bps_hz", "must be finite and >= 0");
    if (!std::isfinite(u.distance_m) || u.distance_m <= 0.0)
      throw ConfigError(at + ".distance_m", "must be > 0");
    if (!std::isfinite(u.noise_power) || u.noise_power <= 0.0)
      throw ConfigError(at + ".noise_dbm", "noise power must be > 0");
    for (std::size_t j = 0; j < i; ++j)
      if (users[j].id == u.id) throw ConfigError(at + ".id", "duplicate user id");
    any_positive = any_positive || u.weight > 0.0;
  }
  if (!any_positive) throw ConfigError("users", "at least one weight must be > 0");
}

ChannelState make_channel_state(std::int64_t slot, std::vector<double> gain_sq,
                                std::span<const double> noise_power) {
  if (gain_sq.size() != noise_power.size())
    throw std::invalid_argument("make_channel_state: size mismatch");
  ChannelState state;
  state.slot = slot;
  state.ncr.resize(gain_sq.size());
  for (std::size_t i = 0; i < gain_sq.size(); ++i) {
    state.ncr[i] = noise_power[i] / gain_sq[i];
    if (!(gain_sq[i] > 0.0) || !std::isfinite(state.ncr[i]) || !(state.ncr[i] > 0.0))
      throw NumericalError("channel: NCR of user " + std::to_string(i) +
                           " is not finite and positive");
  }
  state.gain_sq = std::move(gain_sq);
  return state;
}

ChannelState channel_from_ncr(std::span<const double> ncr, std::int64_t slot) {
  std::vector<double> gain(ncr.size());
  std::vector<double> noise(ncr.size(), 1.0);
  for (std::size_t i = 0; i < ncr.size(); ++i) gain[i] = 1.0 / ncr[i];
  ChannelState state = make_channel_state(slot, std::move(gain), noise);
  state.ncr.assign(ncr.begin(), ncr.end());
  return state;
}

RandomStream::RandomStream(std::uint64_t seed) : RandomStream(splitmix64(seed), 0) {}

RandomStream::RandomStream(std::uint64_t key, int) : key_(key), engine_(seeded_engine(key)) {}

RandomStream RandomStream::split(std::uint64_t key) const {
  return RandomStream(splitmix64(key_ ^ splitmix64(key + 0x632be59bd9b4e019ULL)), 0);
}

double RandomStream::normal(double mean, double stddev) {
  return mean + stddev * normal_(engine_);
}

double RandomStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double pathloss_db(double distance_m, const FadingParams& params) {
  return params.pathloss_const_db + params.pathloss_slope_db * std::log10(distance_m / 1000.0);
}

double draw_large_scale(const UserProfile& profile, const FadingParams& params,
                        RandomStream& rng) {
  double shadow_db = 0.0;
  if (params.shadowing_sigma_db > 0.0) shadow_db = rng.normal(0.0, params.shadowing_sigma_db);
  return std::pow(10.0, -(pathloss_db(profile.distance_m, params) + shadow_db) / 10.0);
}

double draw_small_scale(RandomStream& rng) {
  const double s = std::sqrt(0.5);
  for (;;) {
    const double re = rng.normal(0.0, s);
    const double im = rng.normal(0.0, s);
    const double g = re * re + im * im;
    if (g > 0.0) return g;
  }
}

ChannelState draw_slot(std::int64_t slot, std::span<const UserProfile> users,
                       std::span<const double> large_scale,
                       std::span<RandomStream> rngs) {
  if (users.size() != large_scale.size() || users.size() != rngs.size())
    throw std::invalid_argument("draw_slot: size mismatch");
  std::vector<double> gain(users.size());
  std::vector<double> noise(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    gain[i] = large_scale[i] * draw_small_scale(rngs[i]);
    noise[i] = users[i].noise_power;
  }
  return make_channel_state(slot, std::move(gain), noise);
}

ChannelProcess::ChannelProcess(std::vector<UserProfile> users, FadingParams params,
                               std::uint64_t trial)
    : users_(std::move(users)), params_(params) {
  const RandomStream trial_rng = RandomStream(params_.rng_seed).split(trial);
  for (const auto& u : users_) {
    const RandomStream user_rng = trial_rng.split(static_cast<std::uint64_t>(u.id));
    shadow_rngs_.push_back(user_rng.split(kShadowStream));
    fading_rngs_.push_back(user_rng.split(kFadingStream));
  }
  large_scale_.resize(users_.size());
  for (std::size_t i = 0; i < users_.size(); ++i)
    large_scale_[i] = draw_large_scale(users_[i], params_, shadow_rngs_[i]);
}

ChannelState ChannelProcess::next() {
  ++slot_;
  if (params_.shadowing_per_slot && slot_ > 1) {
    for (std::size_t i = 0; i < users_.size(); ++i)
      large_scale_[i] = draw_large_scale(users_[i], params_, shadow_rngs_[i]);
  }
  return draw_slot(slot_, users_, large_scale_, fading_rngs_);
}

}  // namespace noma
