#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace noma {

struct UserProfile {
  int id = 0;
  double weight = 1.0;        // w_i
  double min_avg_rate = 0.0;  // bits/s/Hz
  double distance_m = 100.0;
  double noise_power = 0.0;   // watts
};

/// Throws ConfigError on the first violated profile invariant.
void validate_profiles(std::span<const UserProfile> users);

struct FadingParams {
  double pathloss_const_db = 128.1;
  double pathloss_slope_db = 37.6;  // per decade of distance in km
  double shadowing_sigma_db = 8.0;
  std::uint64_t rng_seed = 1;
  // Shadowing is fixed per trial unless this is set.
  bool shadowing_per_slot = false;
};

/// Per-slot channel realization. ncr[i] = noise_power[i] / gain_sq[i].
struct ChannelState {
  std::int64_t slot = 1;
  std::vector<double> gain_sq;
  std::vector<double> ncr;

  std::size_t size() const noexcept { return ncr.size(); }
};

/// Builds a state from channel gains, enforcing finite positive NCRs.
ChannelState make_channel_state(std::int64_t slot, std::vector<double> gain_sq,
                                std::span<const double> noise_power);

/// Builds a state directly from NCR values (unit noise, gain = 1/ncr).
ChannelState channel_from_ncr(std::span<const double> ncr, std::int64_t slot = 1);

/// Seedable, splittable random stream. Children derived with split() are
/// independent of one another and of the parent's draw history.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  RandomStream split(std::uint64_t key) const;

  double normal(double mean = 0.0, double stddev = 1.0);
  double uniform(double lo, double hi);
  std::mt19937_64& engine() noexcept { return engine_; }
  std::uint64_t key() const noexcept { return key_; }

 private:
  RandomStream(std::uint64_t key, int);

  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

double pathloss_db(double distance_m, const FadingParams& params);

/// Linear power attenuation 10^(-(PL + S)/10), S ~ N(0, sigma^2) in dB.
double draw_large_scale(const UserProfile& profile, const FadingParams& params,
                        RandomStream& rng);

/// |h|^2 of a zero-mean unit-variance complex Gaussian coefficient; the
/// zero event is redrawn.
double draw_small_scale(RandomStream& rng);

/// One slot: gain_sq[i] = large_scale[i] * g_i with g_i from rngs[i].
ChannelState draw_slot(std::int64_t slot, std::span<const UserProfile> users,
                       std::span<const double> large_scale,
                       std::span<RandomStream> rngs);

/// Block-fading channel for one trial. Every user owns two substreams of
/// (seed, trial): one for large-scale, one for small-scale fading.
class ChannelProcess {
 public:
  ChannelProcess(std::vector<UserProfile> users, FadingParams params,
                 std::uint64_t trial);

  ChannelState next();

  std::span<const double> large_scale() const noexcept { return large_scale_; }
  std::int64_t slots_drawn() const noexcept { return slot_; }

 private:
  std::vector<UserProfile> users_;
  FadingParams params_;
  std::vector<RandomStream> shadow_rngs_;
  std::vector<RandomStream> fading_rngs_;
  std::vector<double> large_scale_;
  std::int64_t slot_ = 0;
};

}  // namespace noma
