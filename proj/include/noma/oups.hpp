#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "noma/channel.hpp"
#include "noma/config.hpp"
#include "noma/oracle.hpp"
#include "noma/rate.hpp"
#include "noma/step.hpp"
#include "noma/uspa.hpp"

namespace noma {

/// Lagrange multipliers and running rate averages. `t` counts the slots
/// folded in so far (0 before the first update, where averages are 0).
struct DualState {
  std::vector<double> lambda;
  std::int64_t t = 0;
  std::vector<double> cum_rate;
  std::vector<double> avg_rate;

  static DualState initial(std::size_t n);
};

EffectiveWeights effective_weights(std::span<const UserProfile> users, const DualState& dual);

/// Projected stochastic subgradient step:
///   lambda_i <- max(0, lambda_i - zeta (R_i - Rbar_i))
/// and the running sums advance by one slot.
DualState dual_update(const DualState& dual, std::span<const double> realized,
                      std::span<const double> requirements, double zeta);

/// Per-slot allocation strategy shared by all scheduler variants.
using SlotAllocator =
    std::function<Allocation(const ChannelState&, const EffectiveWeights&, double p_max)>;

SlotAllocator make_allocator(AllocatorKind kind, const GridSpec& grid = {});

struct SlotLog {
  std::int64_t trial = 0;
  std::int64_t t = 0;
  std::vector<std::size_t> selected;
  std::vector<double> powers;
  std::vector<double> rates;
  std::vector<double> lambda;  // multipliers used for this slot's decision
  double wsr = 0.0;            // sum_i w_i R_i with the static weights
};

using SlotSink = std::function<void(const SlotLog&)>;

struct Checkpoint {
  std::int64_t t = 0;
  std::vector<double> avg_rate;
  std::vector<double> lambda;
  double avg_wsr = 0.0;
};

struct Summary {
  std::int64_t slots = 0;
  double avg_wsr = 0.0;
  std::vector<double> avg_rate;
  std::vector<double> qos_slack;  // avg_rate - Rbar
  std::vector<double> lambda;     // after the last update
  double median_call_ns = 0.0;
  std::vector<Checkpoint> checkpoints;
};

/// Checkpoint slots {1, 10, 100, ...} up to `slots`, plus `slots` itself.
std::vector<std::int64_t> checkpoint_slots(std::int64_t slots);

struct RunOptions {
  std::uint64_t trial = 0;
  bool measure_time = true;
  SlotSink sink;
};

/// Opportunistic scheduling over config.slots slots of one trial: draw the
/// channel, weight users by w + lambda, allocate, realize rates, update the
/// multipliers. Throws NumericalError on a non-finite rate.
Summary run(const ScenarioConfig& config, const SlotAllocator& allocator, const RunOptions& options = {});

}  // namespace noma
