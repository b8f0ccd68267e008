#include "gridsar/pomdp.hpp"

#include <stdexcept>

namespace gridsar {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::West: return "W";
    case Action::South: return "S";
    case Action::East: return "E";
    case Action::North: return "N";
  }
  return "?";
}

Action action_from_string(std::string_view s) {
  if (s == "W" || s == "west") return Action::West;
  if (s == "S" || s == "south") return Action::South;
  if (s == "E" || s == "east") return Action::East;
  if (s == "N" || s == "north") return Action::North;
  throw std::invalid_argument("unknown action name");
}

std::vector<Action> legal_actions(Cell agent, const WorldSlice& slice) {
  std::vector<Action> out;
  out.reserve(4);
  for (Action a : kActionOrder) {
    const Cell dest = neighbor(agent, a);
    if (!in_grid(dest, slice.geom())) continue;
    if (slice.cell_valid_count(dest) > 0) out.push_back(a);
  }
  return out;
}

std::vector<Action> legal_actions(const SimState& s, const MapGeometry& geom,
                                  const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                                  double altitude) {
  const WorldSlice slice(geom, omap, zones, altitude);
  return legal_actions(s.agent_cell, slice);
}

StepOutcome step_generative_inplace(SimState& s, Action a, const RewardParams& rp,
                                    const WorldSlice& slice, Rng& /*rng*/) {
  const Cell dest = neighbor(s.agent_cell, a);
  if (!in_grid(dest, slice.geom()) || slice.cell_valid_count(dest) == 0)
    throw std::domain_error("illegal action for state");

  int captured = 0;
  for (size_t k = 0; k < s.targets.size(); ++k) {
    if (!s.found(k) && s.targets[k] == dest) {
      s.found_mask |= uint32_t{1} << k;
      ++captured;
    }
  }
  const bool first_visit = !s.visited.contains(dest);
  const double reward = reward_components(captured, first_visit, rp.belief.at(dest), rp.alpha);
  s.visited.insert(dest);
  s.agent_cell = dest;
  s.agent_pos = cell_center(dest, slice.geom(), s.agent_pos.z);
  return StepOutcome{Observation{dest, captured}, reward};
}

std::tuple<SimState, Observation, double> step_generative(const SimState& s, Action a,
                                                          const RewardParams& rp,
                                                          const WorldSlice& slice, Rng& rng) {
  SimState next = s;
  const StepOutcome out = step_generative_inplace(next, a, rp, slice, rng);
  return {std::move(next), out.obs, out.reward};
}

}  // namespace gridsar
