#pragma once

#include <cstddef>

#include "noma/channel.hpp"
#include "noma/rate.hpp"
#include "noma/uspa.hpp"

namespace noma {

/// Reference solvers for verification. Nothing here shares code with the
/// closed-form allocator.

/// Two-user objective on the full-power boundary, as a function of the
/// last SIC user's power p_last in [0, p_max].
double two_user_objective(double p_last, double ncr_last, double ncr_companion, double w_last,
                          double w_companion, double p_max);

/// Derivative of two_user_objective with respect to p_last.
double two_user_objective_slope(double p_last, double ncr_last, double ncr_companion,
                                double w_last, double w_companion);

/// Golden-section maximizer of two_user_objective. Endpoints are returned
/// exactly when the slope there shows the objective is monotone; otherwise
/// the bracket is shrunk to width <= 1e-10 * p_max. Throws InvalidOrder
/// unless ncr_last < ncr_companion.
double golden_two_user(double ncr_last, double ncr_companion, double w_last, double w_companion,
                       double p_max);

struct GridSpec {
  int resolution = 1001;    // points per simplex axis (M)
  int max_subset_size = 3;
};

inline constexpr std::size_t kGridMaxUsers = 6;

struct GridResult {
  Allocation allocation;
  double wsr = 0.0;
};

/// Exhaustive search over all user subsets of size <= max_subset_size with
/// powers on the grid {P * n / (M - 1)}, sum n = M - 1. Throws
/// TooLargeInstance above kGridMaxUsers users.
GridResult grid_q2(const ChannelState& channel, const EffectiveWeights& weights, double p_max,
                   const GridSpec& spec);

}  // namespace noma
