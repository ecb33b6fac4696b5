#include "noma/baselines.hpp"

#include <stdexcept>

#include "noma/common.hpp"

namespace noma {

Allocation oma_allocate(const ChannelState& channel, const EffectiveWeights& weights, double p_max) {
  const std::size_t n = channel.size();
  if (n == 0) throw std::invalid_argument("oma: no users");
  if (weights.size() != n) throw std::invalid_argument("oma: weight count does not match channel");
  if (!(p_max > 0.0)) throw std::invalid_argument("oma: power budget must be > 0");

  std::size_t best = 0;
  double best_rate = weights[0] * log2_1p(p_max / channel.ncr[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double r = weights[i] * log2_1p(p_max / channel.ncr[i]);
    if (r > best_rate) {
      best = i;
      best_rate = r;
    }
  }
  Allocation alloc = Allocation::none(n);
  alloc.powers[best] = p_max;
  alloc.selected[best] = true;
  return alloc;
}

}  // namespace noma
