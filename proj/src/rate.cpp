#include "noma/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "noma/common.hpp"

namespace noma {

std::size_t Allocation::selected_count() const noexcept {
  return static_cast<std::size_t>(std::count(selected.begin(), selected.end(), true));
}

double Allocation::total_power() const noexcept {
  return std::accumulate(powers.begin(), powers.end(), 0.0);
}

std::vector<std::size_t> Allocation::selected_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < selected.size(); ++i)
    if (selected[i]) ids.push_back(i);
  return ids;
}

void check_allocation(const Allocation& alloc) {
  if (alloc.powers.size() != alloc.selected.size())
    throw InvalidAllocation("allocation: powers/selected size mismatch");
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    const double p = alloc.powers[i];
    const std::string who = "allocation: user " + std::to_string(i);
    if (!std::isfinite(p) || p < 0.0) throw InvalidAllocation(who + " has invalid power");
    if (!alloc.selected[i] && p != 0.0) throw InvalidAllocation(who + " has power but is not selected");
    if (alloc.selected[i] && !(p > 0.0)) throw InvalidAllocation(who + " is selected with zero power");
  }
}

void check_allocation(const Allocation& alloc, double p_max) {
  check_allocation(alloc);
  if (alloc.total_power() > p_max + 1e-9 * p_max)
    throw InvalidAllocation("allocation: total power exceeds the budget");
}

void select_by_power(Allocation& alloc) {
  alloc.selected.resize(alloc.powers.size());
  for (std::size_t i = 0; i < alloc.size(); ++i) alloc.selected[i] = alloc.powers[i] > 0.0;
}

std::vector<std::size_t> sic_order(const ChannelState& channel) {
  std::vector<std::size_t> order(channel.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::span<const double> ncr = channel.ncr;
  std::sort(order.begin(), order.end(),
            [ncr](std::size_t a, std::size_t b) { return decodes_before(ncr, a, b); });
  return order;
}

RateVector rates(const Allocation& alloc, const ChannelState& channel) {
  check_allocation(alloc);
  if (alloc.size() != channel.size()) throw InvalidAllocation("allocation: size does not match channel");

  RateVector out(alloc.size(), 0.0);
  const auto order = sic_order(channel);
  // Walk from the last-decoded user backwards, carrying the power of users
  // decoded after the current one.
  double later_power = 0.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = *it;
    if (alloc.selected[i]) {
      out[i] = log2_1p(alloc.powers[i] / (later_power + channel.ncr[i]));
      later_power += alloc.powers[i];
    }
  }
  return out;
}

double weighted_sum(std::span<const double> rates, std::span<const double> weights) {
  if (rates.size() != weights.size()) throw std::invalid_argument("weighted_sum: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) sum += weights[i] * rates[i];
  return sum;
}

}  // namespace noma
