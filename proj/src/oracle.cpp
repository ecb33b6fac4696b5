#include "noma/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "noma/common.hpp"

namespace noma {

double two_user_objective(double p_last, double ncr_last, double ncr_companion, double w_last,
                          double w_companion, double p_max) {
  return (w_companion * std::log((p_max + ncr_companion) / (p_last + ncr_companion)) +
          w_last * std::log((p_last + ncr_last) / ncr_last)) /
         std::numbers::ln2;
}

double two_user_objective_slope(double p_last, double ncr_last, double ncr_companion,
                                double w_last, double w_companion) {
  return (w_last / (p_last + ncr_last) - w_companion / (p_last + ncr_companion)) / std::numbers::ln2;
}

double golden_two_user(double ncr_last, double ncr_companion, double w_last, double w_companion,
                       double p_max) {
  if (!(ncr_last < ncr_companion))
    throw InvalidOrder("golden_two_user: last SIC user must have the smaller NCR");
  if (!(p_max > 0.0)) throw std::invalid_argument("golden_two_user: power budget must be > 0");

  // The objective is quasi-concave on [0, P]; an endpoint slope pointing
  // into the interval settles monotone cases exactly.
  if (two_user_objective_slope(p_max, ncr_last, ncr_companion, w_last, w_companion) >= 0.0) return p_max;
  if (two_user_objective_slope(0.0, ncr_last, ncr_companion, w_last, w_companion) <= 0.0) return 0.0;

  // g(x) - g(y) without forming either value, so flat objectives still
  // compare correctly.
  auto gain = [&](double x, double y) {
    return w_companion * std::log1p((y - x) / (x + ncr_companion)) +
           w_last * std::log1p((x - y) / (y + ncr_last));
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = p_max;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  const double width = 1e-10 * p_max;
  while (hi - lo > width) {
    if (gain(c, d) > 0.0) {
      hi = d;
      d = c;
      c = hi - inv_phi * (hi - lo);
    } else {
      lo = c;
      c = d;
      d = lo + inv_phi * (hi - lo);
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

struct SubsetSearch {
  int units = 0;                                  // M - 1
  std::vector<std::size_t> members;               // decoding order
  std::vector<double> weight;
  std::vector<std::vector<double>> log_table;     // ln(s * step + ncr) per member
  std::vector<int> suffix;                        // suffix sums in units
  double best_value = -1.0;
  std::vector<int> best_suffix;

  // Fills suffix[depth..] with strictly decreasing positive values.
  void recurse(std::size_t depth, double acc) {
    const std::size_t s = members.size();
    const int prev = suffix[depth - 1];
    if (depth == s) {
      // Last member decodes everything: no interference left.
      const auto& t = log_table[depth - 1];
      const double value = acc + weight[depth - 1] * (t[prev] - t[0]);
      if (value > best_value) {
        best_value = value;
        best_suffix = suffix;
      }
      return;
    }
    const auto& t = log_table[depth - 1];
    const int remaining = static_cast<int>(s - depth);
    for (int next = prev - 1; next >= remaining; --next) {
      suffix[depth] = next;
      recurse(depth + 1, acc + weight[depth - 1] * (t[prev] - t[next]));
    }
  }
};

}  // namespace

GridResult grid_q2(const ChannelState& channel, const EffectiveWeights& weights, double p_max,
                   const GridSpec& spec) {
  const std::size_t n = channel.size();
  if (n > kGridMaxUsers) throw TooLargeInstance("grid_q2: at most 6 users are supported");
  if (n == 0) throw std::invalid_argument("grid_q2: no users");
  if (weights.size() != n) throw std::invalid_argument("grid_q2: weight count does not match channel");
  if (spec.resolution < 2) throw std::invalid_argument("grid_q2: resolution must be >= 2");
  if (spec.max_subset_size < 1) throw std::invalid_argument("grid_q2: max_subset_size must be >= 1");
  if (!(p_max > 0.0)) throw std::invalid_argument("grid_q2: power budget must be > 0");

  const int units = spec.resolution - 1;
  const double step = p_max / units;
  const std::size_t max_size = std::min<std::size_t>(n, static_cast<std::size_t>(spec.max_subset_size));
  const auto order = sic_order(channel);

  double best_value = -1.0;
  std::vector<std::size_t> best_members;
  std::vector<int> best_suffix;

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > max_size || static_cast<int>(size) > units) continue;

    SubsetSearch search;
    search.units = units;
    for (std::size_t i : order)
      if (mask & (1u << i)) search.members.push_back(i);
    for (std::size_t i : search.members) {
      search.weight.push_back(weights[i]);
      std::vector<double> table(static_cast<std::size_t>(units) + 1);
      for (int s = 0; s <= units; ++s) table[s] = std::log(s * step + channel.ncr[i]);
      search.log_table.push_back(std::move(table));
    }
    search.suffix.assign(size, 0);
    search.suffix[0] = units;
    search.recurse(1, 0.0);

    if (search.best_value > best_value) {
      best_value = search.best_value;
      best_members = search.members;
      best_suffix = search.best_suffix;
    }
  }

  GridResult result;
  result.allocation = Allocation::none(n);
  for (std::size_t j = 0; j < best_members.size(); ++j) {
    const int next = j + 1 < best_suffix.size() ? best_suffix[j + 1] : 0;
    result.allocation.powers[best_members[j]] = (best_suffix[j] - next) * step;
  }
  select_by_power(result.allocation);
  result.wsr = weighted_sum(rates(result.allocation, channel), weights.values);
  return result;
}

}  // namespace noma
