#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "noma/channel.hpp"
#include "noma/rate.hpp"

namespace noma {

/// Per-slot priorities w_i + lambda_i.
struct EffectiveWeights {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

struct PowerSplit {
  double last_sic = 0.0;   // p_k
  double companion = 0.0;  // p_phi
};

/// Outcome of the last-SIC-user enumeration.
struct PairDecision {
  std::size_t last_sic = 0;
  std::optional<std::size_t> companion;
  double p_last = 0.0;
  double p_companion = 0.0;
  double wsr = 0.0;
};

/// Max-weight user strictly before `position` in the SIC order (ties by
/// ascending id). Empty for the first position.
std::optional<std::size_t> companion(std::span<const std::size_t> order, std::size_t position,
                                     const EffectiveWeights& weights);

/// Optimal two-user power split on the full-power boundary.
///
/// The last SIC user k (NCR ncr_last) decodes everything and sees no
/// interference; the companion (NCR ncr_companion) is interfered by p_k.
/// With ratio r = w_k / w_phi, C1 = ncr_last / ncr_companion and
/// C2 = (P + ncr_last) / (P + ncr_companion):
///   p_k = 0     if r < C1
///   p_k = P     if r >= C2 (or r == 1)
///   p_k = (w_phi ncr_last - w_k ncr_companion) / (w_k - w_phi)  otherwise
/// and p_phi = P - p_k.
///
/// Requires ncr_last < ncr_companion (else InvalidOrder), w_companion > 0
/// and p_max > 0.
PowerSplit two_user_split(double ncr_last, double ncr_companion, double w_last,
                          double w_companion, double p_max);

/// Weighted sum rate of a last-SIC user and its companion for a given split.
double pair_weighted_rate(double ncr_last, double ncr_companion, double w_last,
                          double w_companion, const PowerSplit& split);

PairDecision uspa_decide(const ChannelState& channel, const EffectiveWeights& weights,
                         double p_max);

/// Linear-time user selection and power allocation. At most two users end
/// up selected; q_i = (p_i > 0).
Allocation uspa_allocate(const ChannelState& channel, const EffectiveWeights& weights,
                         double p_max);

}  // namespace noma
