#pragma once

#include <optional>

#include "gridsar/astar.hpp"
#include "gridsar/pomdp.hpp"

namespace gridsar {

struct RolloutConfig {
  int sample_count = 16;         // positions drawn per target cell
  double step_cost_scale_m = 0;  // meters per discount step; 0 = cell size
  friend bool operator==(const RolloutConfig&, const RolloutConfig&) = default;
};

/// Draw sample_count lattice points uniformly from the target cell, keep the
/// flyable ones, return the one nearest to `current` (first drawn wins ties).
/// Nullopt when no drawn point is flyable.
std::optional<FinePosition> sample_next_position(const FinePosition& current, Cell target_cell,
                                                 const RolloutConfig& cfg,
                                                 const WorldSlice& slice, Rng& rng);

/// f(L) applied to the destination payoff: gamma^(L / scale) * (target term +
/// alpha * P_dest). Monotonically decreasing in L for gamma < 1.
double rollout_step_value(double path_len_m, bool target_in_dest, double p_dest, double alpha,
                          double gamma, double scale_m);

/// Leaf value estimate: route to the highest-belief cell, price the A* path.
/// Zero when the destination yields no flyable sample or no path exists.
double rollout_value(const SimState& s, Cell dest_cell, const RewardParams& rp,
                     const RolloutConfig& cfg, double gamma, AStarGrid& astar, Rng& rng);

}  // namespace gridsar
