#include "gridsar/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridsar {

namespace {

// Nearest nonzero-belief cell by center distance; ties resolved to the lower
// row-major index. Returns false when the map is all-zero.
bool nearest_nonzero(const BeliefMap& belief, Cell from, Cell& out) {
  const int n = belief.grid_n();
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Cell c{i, j};
      if (belief.at(c) <= 0.0) continue;
      const double di = c.i - from.i, dj = c.j - from.j;
      const double d = di * di + dj * dj;
      if (d < best) {
        best = d;
        out = c;
        found = true;
      }
    }
  }
  return found;
}

// Serpentine order over the bounding rectangle of nonzero cells, starting at
// the rectangle corner nearest the agent.
std::vector<Cell> build_sweep(const BeliefMap& belief, Cell agent) {
  const int n = belief.grid_n();
  int i0 = n, j0 = n, i1 = -1, j1 = -1;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (belief.at(Cell{i, j}) > 0.0) {
        i0 = std::min(i0, i);
        j0 = std::min(j0, j);
        i1 = std::max(i1, i);
        j1 = std::max(j1, j);
      }
  std::vector<Cell> sweep;
  if (i1 < 0) return sweep;

  const bool start_west = std::abs(agent.i - i0) <= std::abs(agent.i - i1);
  const bool start_south = std::abs(agent.j - j0) <= std::abs(agent.j - j1);
  sweep.reserve(static_cast<size_t>(i1 - i0 + 1) * (j1 - j0 + 1));
  bool eastward = start_west;
  const int rows = j1 - j0 + 1;
  for (int r = 0; r < rows; ++r) {
    const int j = start_south ? j0 + r : j1 - r;
    if (eastward)
      for (int i = i0; i <= i1; ++i) sweep.push_back(Cell{i, j});
    else
      for (int i = i1; i >= i0; --i) sweep.push_back(Cell{i, j});
    eastward = !eastward;
  }
  return sweep;
}

}  // namespace

Cell lawnmower_next(LawnmowerState& state, Cell agent, const BeliefMap& belief,
                    const WorldSlice& slice) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (state.phase == LawnmowerState::Phase::Transit) {
      // Arrival at the transit goal flips to sweeping even though the visit
      // update has already zeroed that cell's mass.
      const bool arrived = state.transit_target && *state.transit_target == agent;
      if (!arrived) {
        Cell target;
        if (!nearest_nonzero(belief, agent, target))
          throw std::domain_error("lawnmower requires nonzero belief mass");
        if (!(target == agent)) {
          state.transit_target = target;
          return target;
        }
      }
      // Inside the nonzero region: freeze the sweep.
      state.transit_target.reset();
      state.sweep = build_sweep(belief, agent);
      state.cursor = 0;
      state.phase = LawnmowerState::Phase::Sweeping;
    }
    while (state.cursor < state.sweep.size()) {
      const Cell c = state.sweep[state.cursor++];
      if (c == agent) continue;
      if (slice.cell_valid_count(c) == 0) continue;  // fully blocked at this altitude
      return c;
    }
    // Sweep exhausted: restart against the live belief.
    state.phase = LawnmowerState::Phase::Transit;
    state.sweep.clear();
    state.cursor = 0;
  }
  // Remaining mass sits on blocked cells (or only under the agent); hand the
  // nearest one to the navigator and let the epoch resolve it.
  Cell target;
  if (!nearest_nonzero(belief, agent, target))
    throw std::domain_error("lawnmower requires nonzero belief mass");
  return target;
}

Cell greedy_next(Cell agent, const BeliefMap& belief, const WorldSlice& slice) {
  const auto legal = legal_actions(agent, slice);
  if (legal.empty()) throw std::domain_error("greedy agent has no legal neighbor");
  Cell best = neighbor(agent, legal.front());
  double best_v = belief.at(best);
  for (size_t k = 1; k < legal.size(); ++k) {
    const Cell c = neighbor(agent, legal[k]);
    const double v = belief.at(c);
    if (v > best_v) {
      best = c;
      best_v = v;
    }
  }
  return best;
}

PlanResult vanilla_pomcp_plan(const BeliefMap& belief, const SimState& agent_template,
                              const PlannerConfig& cfg, const World& world, double altitude,
                              Rng& rng, PlanTrace* trace,
                              std::unique_ptr<BeliefNode>* tree_out) {
  BuiltTree built = build_tree(belief, agent_template, cfg, world, altitude, rng, trace);
  // Root argmax only; equivalent to extracting a length-1 sequence.
  PlanResult result;
  result.actions = get_action_sequence(*built.root, 1, cfg.resolved_p_epsilon(world.geom.grid_n));
  result.stats = std::move(built.stats);
  if (tree_out) *tree_out = std::move(built.root);
  return result;
}

}  // namespace gridsar
