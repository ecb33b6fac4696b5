#pragma once

#include "noma/channel.hpp"
#include "noma/rate.hpp"
#include "noma/uspa.hpp"

namespace noma {

/// Orthogonal baseline: the single user with the highest full-power
/// weighted rate w_i log2(1 + P / ncr_i) takes the whole slot. Ties go to
/// the smaller index.
Allocation oma_allocate(const ChannelState& channel, const EffectiveWeights& weights, double p_max);

}  // namespace noma
