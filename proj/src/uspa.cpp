#include "noma/uspa.hpp"

#include <algorithm>
#include <stdexcept>

#include "noma/common.hpp"

namespace noma {
namespace {

// Split without the strict order check: equal NCRs collapse C1 == C2 == 1,
// which the boundary branches already handle.
PowerSplit split_unchecked(double ncr_last, double ncr_companion, double w_last,
                           double w_companion, double p_max) {
  if (w_last == w_companion) return {p_max, 0.0};
  const double ratio = w_last / w_companion;
  const double c1 = ncr_last / ncr_companion;
  const double c2 = (p_max + ncr_last) / (p_max + ncr_companion);
  if (ratio < c1) return {0.0, p_max};
  if (ratio >= c2) return {p_max, 0.0};
  const double p_last = std::clamp(
      (w_companion * ncr_last - w_last * ncr_companion) / (w_last - w_companion), 0.0, p_max);
  return {p_last, p_max - p_last};
}

}  // namespace

std::optional<std::size_t> companion(std::span<const std::size_t> order, std::size_t position,
                                     const EffectiveWeights& weights) {
  if (position >= order.size()) throw std::out_of_range("companion: position out of range");
  std::optional<std::size_t> best;
  for (std::size_t pos = 0; pos < position; ++pos) {
    const std::size_t i = order[pos];
    if (!best || weights[i] > weights[*best] || (weights[i] == weights[*best] && i < *best)) best = i;
  }
  return best;
}

PowerSplit two_user_split(double ncr_last, double ncr_companion, double w_last,
                          double w_companion, double p_max) {
  if (!(ncr_last < ncr_companion))
    throw InvalidOrder("two_user_split: last SIC user must have the smaller NCR");
  if (!(w_companion > 0.0)) throw std::invalid_argument("two_user_split: companion weight must be > 0");
  if (!(p_max > 0.0)) throw std::invalid_argument("two_user_split: power budget must be > 0");
  return split_unchecked(ncr_last, ncr_companion, w_last, w_companion, p_max);
}

double pair_weighted_rate(double ncr_last, double ncr_companion, double w_last,
                          double w_companion, const PowerSplit& split) {
  return w_companion * log2_1p(split.companion / (split.last_sic + ncr_companion)) +
         w_last * log2_1p(split.last_sic / ncr_last);
}

PairDecision uspa_decide(const ChannelState& channel, const EffectiveWeights& weights,
                         double p_max) {
  const std::size_t n = channel.size();
  if (n == 0) throw std::invalid_argument("uspa: no users");
  if (weights.size() != n) throw std::invalid_argument("uspa: weight count does not match channel");
  if (!(p_max > 0.0)) throw std::invalid_argument("uspa: power budget must be > 0");

  const auto order = sic_order(channel);
  const auto& ncr = channel.ncr;

  std::optional<PairDecision> best;
  std::optional<std::size_t> running;  // argmax of w~ over positions before k
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t k = order[pos];
    PairDecision cand;
    cand.last_sic = k;
    if (!running || !(weights[*running] > 0.0)) {
      cand.p_last = p_max;
      cand.wsr = weights[k] * log2_1p(p_max / ncr[k]);
    } else {
      const std::size_t phi = *running;
      const PowerSplit split = split_unchecked(ncr[k], ncr[phi], weights[k], weights[phi], p_max);
      cand.companion = phi;
      cand.p_last = split.last_sic;
      cand.p_companion = split.companion;
      cand.wsr = pair_weighted_rate(ncr[k], ncr[phi], weights[k], weights[phi], split);
    }
    if (!best || cand.wsr > best->wsr || (cand.wsr == best->wsr && k < best->last_sic)) best = cand;

    if (!running || weights[k] > weights[*running] || (weights[k] == weights[*running] && k < *running))
      running = k;
  }
  return *best;
}

Allocation uspa_allocate(const ChannelState& channel, const EffectiveWeights& weights,
                         double p_max) {
  const PairDecision d = uspa_decide(channel, weights, p_max);
  Allocation alloc = Allocation::none(channel.size());
  alloc.powers[d.last_sic] = d.p_last;
  if (d.companion) alloc.powers[*d.companion] = d.p_companion;
  select_by_power(alloc);
  return alloc;
}

}  // namespace noma
