#include "noma/oups.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noma/baselines.hpp"
#include "noma/common.hpp"

namespace noma {

DualState DualState::initial(std::size_t n) {
  DualState d;
  d.lambda.assign(n, 0.0);
  d.cum_rate.assign(n, 0.0);
  d.avg_rate.assign(n, 0.0);
  return d;
}

EffectiveWeights effective_weights(std::span<const UserProfile> users, const DualState& dual) {
  if (users.size() != dual.lambda.size())
    throw std::invalid_argument("effective_weights: size mismatch");
  EffectiveWeights w;
  w.values.resize(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) w.values[i] = users[i].weight + dual.lambda[i];
  return w;
}

DualState dual_update(const DualState& dual, std::span<const double> realized,
                      std::span<const double> requirements, double zeta) {
  const std::size_t n = dual.lambda.size();
  if (realized.size() != n || requirements.size() != n)
    throw std::invalid_argument("dual_update: size mismatch");
  if (!(zeta >= 0.0)) throw std::invalid_argument("dual_update: step size must be >= 0");

  DualState next = dual;
  next.t = dual.t + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double subgradient = realized[i] - requirements[i];
    next.lambda[i] = std::max(0.0, dual.lambda[i] - zeta * subgradient);
    next.cum_rate[i] = dual.cum_rate[i] + realized[i];
    next.avg_rate[i] = next.cum_rate[i] / static_cast<double>(next.t);
  }
  return next;
}

SlotAllocator make_allocator(AllocatorKind kind, const GridSpec& grid) {
  switch (kind) {
    case AllocatorKind::uspa:
      return [](const ChannelState& ch, const EffectiveWeights& w, double p) { return uspa_allocate(ch, w, p); };
    case AllocatorKind::oma:
      return [](const ChannelState& ch, const EffectiveWeights& w, double p) { return oma_allocate(ch, w, p); };
    case AllocatorKind::oracle:
      return [grid](const ChannelState& ch, const EffectiveWeights& w, double p) {
        return grid_q2(ch, w, p, grid).allocation;
      };
  }
  throw std::invalid_argument("make_allocator: unknown kind");
}

std::vector<std::int64_t> checkpoint_slots(std::int64_t slots) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t <= slots; t *= 10) {
    out.push_back(t);
    if (t > slots / 10) break;
  }
  if (out.empty() || out.back() != slots) out.push_back(slots);
  return out;
}

Summary run(const ScenarioConfig& config, const SlotAllocator& allocator, const RunOptions& options) {
  if (config.random_users) throw ConfigError("users", "scheduling runs need explicit users");
  validate(config);
  const auto& users = config.users;
  const std::size_t n = users.size();

  std::vector<double> requirements(n);
  std::vector<double> static_weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    requirements[i] = users[i].min_avg_rate;
    static_weights[i] = users[i].weight;
  }

  ChannelProcess channel(users, config.fading, options.trial);
  DualState dual = DualState::initial(n);
  const auto checkpoints = checkpoint_slots(config.slots);
  auto next_checkpoint = checkpoints.begin();

  Summary summary;
  summary.slots = config.slots;
  std::vector<double> call_ns;
  if (options.measure_time) call_ns.reserve(static_cast<std::size_t>(config.slots));
  double cum_wsr = 0.0;

  for (std::int64_t t = 1; t <= config.slots; ++t) {
    const ChannelState state = channel.next();
    const EffectiveWeights weights = effective_weights(users, dual);

    Allocation alloc;
    if (options.measure_time) {
      const auto start = std::chrono::steady_clock::now();
      alloc = allocator(state, weights, config.p_max);
      const auto stop = std::chrono::steady_clock::now();
      call_ns.push_back(std::chrono::duration<double, std::nano>(stop - start).count());
    } else {
      alloc = allocator(state, weights, config.p_max);
    }
    check_allocation(alloc, config.p_max);

    const RateVector realized = rates(alloc, state);
    for (std::size_t i = 0; i < n; ++i)
      if (!std::isfinite(realized[i]))
        throw NumericalError("slot " + std::to_string(t) + ": non-finite rate for user " + std::to_string(i));
    const double wsr = weighted_sum(realized, static_weights);
    cum_wsr += wsr;

    if (options.sink) {
      SlotLog log;
      log.trial = static_cast<std::int64_t>(options.trial);
      log.t = t;
      log.selected = alloc.selected_ids();
      log.powers = alloc.powers;
      log.rates = realized;
      log.lambda = dual.lambda;
      log.wsr = wsr;
      options.sink(log);
    }

    dual = dual_update(dual, realized, requirements, config.step.at(t));

    if (next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
      summary.checkpoints.push_back({t, dual.avg_rate, dual.lambda, cum_wsr / static_cast<double>(t)});
      ++next_checkpoint;
    }
  }

  summary.avg_wsr = cum_wsr / static_cast<double>(config.slots);
  summary.avg_rate = dual.avg_rate;
  summary.lambda = dual.lambda;
  summary.qos_slack.resize(n);
  for (std::size_t i = 0; i < n; ++i) summary.qos_slack[i] = dual.avg_rate[i] - requirements[i];
  if (!call_ns.empty()) {
    auto mid = call_ns.begin() + static_cast<std::ptrdiff_t>(call_ns.size() / 2);
    std::nth_element(call_ns.begin(), mid, call_ns.end());
    summary.median_call_ns = *mid;
  }
  return summary;
}

}  // namespace noma
