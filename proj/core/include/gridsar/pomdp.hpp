#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <tuple>
#include <vector>

#include "gridsar/belief.hpp"
#include "gridsar/world.hpp"

namespace gridsar {

// Fixed order everywhere: selection tie-breaks, expansion, serialization.
enum class Action : uint8_t { West = 0, South = 1, East = 2, North = 3 };

inline constexpr std::array<Action, 4> kActionOrder{Action::West, Action::South, Action::East,
                                                    Action::North};

inline Cell neighbor(Cell c, Action a) {
  switch (a) {
    case Action::West: return Cell{c.i - 1, c.j};
    case Action::South: return Cell{c.i, c.j - 1};
    case Action::East: return Cell{c.i + 1, c.j};
    case Action::North: return Cell{c.i, c.j + 1};
  }
  return c;
}

std::string_view to_string(Action a);
Action action_from_string(std::string_view s);

/// World state as the tree search sees it: where the agent is, where the
/// sampled targets are, which are already found, and which cells this
/// trajectory has entered (first-visit token bookkeeping).
struct SimState {
  Cell agent_cell;
  FinePosition agent_pos;
  std::vector<Cell> targets;
  uint32_t found_mask = 0;
  CellSet visited;

  bool found(size_t idx) const { return (found_mask >> idx) & 1u; }
  bool all_found() const {
    return found_mask == (targets.empty() ? 0u : ((uint32_t{1} << targets.size()) - 1));
  }
  int found_count() const { return __builtin_popcount(found_mask); }
};

/// Discrete observation emitted by the generative simulator; also the key for
/// belief-tree children.
struct Observation {
  Cell cell;
  int captured = 0;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct RewardParams {
  double alpha = 0.0;
  BeliefMap belief;  // snapshot frozen at planner invocation
};

/// Binary target term plus the first-visit token term.
inline double reward_components(int captured, bool first_visit, double p_norm, double alpha) {
  return (captured > 0 ? 1.0 : 0.0) + alpha * p_norm * (first_visit ? 1.0 : 0.0);
}

/// Actions whose destination cell lies in the grid and has at least one
/// flyable position at the slice altitude. May be empty (agent boxed in).
std::vector<Action> legal_actions(Cell agent, const WorldSlice& slice);

std::vector<Action> legal_actions(const SimState& s, const MapGeometry& geom,
                                  const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                                  double altitude);

struct StepOutcome {
  Observation obs;
  double reward = 0.0;
};

/// Advance `s` by one cardinal move. Deterministic; the rng parameter is
/// reserved for stochastic transition extensions. Throws std::domain_error on
/// an illegal action.
StepOutcome step_generative_inplace(SimState& s, Action a, const RewardParams& rp,
                                    const WorldSlice& slice, Rng& rng);

std::tuple<SimState, Observation, double> step_generative(const SimState& s, Action a,
                                                          const RewardParams& rp,
                                                          const WorldSlice& slice, Rng& rng);

}  // namespace gridsar
