#pragma once

#include "gridsar/planner.hpp"

namespace gridsar {

/// Boustrophedon sweep over the bounding rectangle of nonzero-belief cells,
/// entered via a transit leg to the nearest nonzero cell. The sweep order is
/// frozen when sweeping starts; exhaustion drops back to transit against the
/// then-current belief.
struct LawnmowerState {
  enum class Phase { Transit, Sweeping };
  Phase phase = Phase::Transit;
  std::optional<Cell> transit_target;  // arrival here flips to Sweeping
  std::vector<Cell> sweep;
  size_t cursor = 0;
};

/// Next waypoint cell for the lawnmower baseline. Skips cells with no flyable
/// position at the slice altitude. Throws std::domain_error when the belief
/// carries no mass anywhere.
Cell lawnmower_next(LawnmowerState& state, Cell agent, const BeliefMap& belief,
                    const WorldSlice& slice);

/// Adjacent legal cell with the highest belief value; ties follow the fixed
/// action order. Revisits are allowed, so it can oscillate on local maxima.
/// Throws std::domain_error when the agent has no legal neighbor.
Cell greedy_next(Cell agent, const BeliefMap& belief, const WorldSlice& slice);

/// Standard POMCP baseline: the same tree construction as the shrinking
/// planner, but only the root's argmax-Q action is executed per epoch.
PlanResult vanilla_pomcp_plan(const BeliefMap& belief, const SimState& agent_template,
                              const PlannerConfig& cfg, const World& world, double altitude,
                              Rng& rng, PlanTrace* trace = nullptr,
                              std::unique_ptr<BeliefNode>* tree_out = nullptr);

}  // namespace gridsar
