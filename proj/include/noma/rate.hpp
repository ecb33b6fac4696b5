#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noma/channel.hpp"

namespace noma {

/// Per-slot decision: transmit power and selection flag for every user.
struct Allocation {
  std::vector<double> powers;
  std::vector<bool> selected;

  static Allocation none(std::size_t n) { return {std::vector<double>(n, 0.0), std::vector<bool>(n, false)}; }

  std::size_t size() const noexcept { return powers.size(); }
  std::size_t selected_count() const noexcept;
  double total_power() const noexcept;
  std::vector<std::size_t> selected_ids() const;
};

/// Selection/power consistency: q=0 => p=0, q=1 => p>0, p finite >= 0.
void check_allocation(const Allocation& alloc);
/// check_allocation plus the power budget (with 1e-9 relative slack).
void check_allocation(const Allocation& alloc, double p_max);

/// Sets q_i = (p_i > 0).
void select_by_power(Allocation& alloc);

using RateVector = std::vector<double>;

/// True when user a is decoded before user b in the SIC chain, i.e. a has
/// the larger NCR (ties: smaller index first). Decoded-later users are the
/// interferers of decoded-earlier ones.
inline bool decodes_before(std::span<const double> ncr, std::size_t a, std::size_t b) {
  return ncr[a] > ncr[b] || (ncr[a] == ncr[b] && a < b);
}

/// User indices by strictly decreasing NCR; ties by ascending index.
std::vector<std::size_t> sic_order(const ChannelState& channel);

/// Achievable rate of every user under SIC. User i sees interference from
/// selected users decoded after it. Throws InvalidAllocation.
RateVector rates(const Allocation& alloc, const ChannelState& channel);

double weighted_sum(std::span<const double> rates, std::span<const double> weights);

}  // namespace noma
