#pragma once

#include <chrono>
#include <memory>
#include <optional>

#include "gridsar/rollout.hpp"
#include "gridsar/tree.hpp"

namespace gridsar {

struct PlannerConfig {
  int max_iterations = 3000;
  double max_time_ms = 0.0;  // 0 disables the wall-clock budget
  int max_level = 5;
  std::optional<double> p_epsilon;  // nullopt = 1 / N^2
  double gamma = 0.995;
  double c_uct = 1.4142135623730951;
  int max_depth = 50;
  double alpha = 1.0;
  RolloutConfig rollout;

  double resolved_p_epsilon(int grid_n) const {
    return p_epsilon ? *p_epsilon : 1.0 / (static_cast<double>(grid_n) * grid_n);
  }
  void validate() const;
  friend bool operator==(const PlannerConfig&, const PlannerConfig&) = default;
};

struct HeightConfig {
  int tau = 10;            // minimum flyable positions to enter a cell
  double delta_h_m = 3.0;
  double h_max_m = 30.0;
  double h_init_m = 10.0;

  void validate() const;
  friend bool operator==(const HeightConfig&, const HeightConfig&) = default;
};

struct RootEdgeStat {
  Action action;
  uint32_t visits;
  double q;
};

struct PlanStats {
  int iterations = 0;
  double elapsed_ms = 0.0;
  uint32_t root_visits = 0;
  std::vector<RootEdgeStat> root_edges;
};

struct PlanResult {
  std::vector<Action> actions;
  PlanStats stats;
};

/// Backup log for one tree build: the exact (node, action, q) triples fed to
/// update_stats, in execution order, so statistics can be replayed and
/// audited offline.
struct PlanTrace {
  struct Update {
    uint32_t node_id;
    Action action;
    double q;
  };
  std::vector<std::vector<Update>> simulations;
};

/// Everything frozen for the duration of one planner invocation.
class PlanContext {
 public:
  PlanContext(const BeliefMap& belief, const World& world, double altitude,
              const PlannerConfig& cfg);

  const WorldSlice& slice() const { return slice_; }
  AStarGrid& astar() { return astar_; }
  const RewardParams& reward_params() const { return rp_; }
  const BeliefMap& root_belief() const { return rp_.belief; }
  const PlannerConfig& config() const { return cfg_; }
  double p_epsilon() const { return p_eps_; }
  Cell rollout_destination() const { return rollout_dest_; }

  /// Root state template + fresh target draw from the belief snapshot.
  SimState sample_root_state(const SimState& agent_template, Rng& rng) const;

 private:
  PlannerConfig cfg_;
  WorldSlice slice_;
  AStarGrid astar_;
  RewardParams rp_;
  BeliefCdf cdf_;
  double p_eps_;
  Cell rollout_dest_;
};

/// One recursive simulation pass (selection / expansion / rollout / backup).
/// Returns the discounted return backed up from `depth`.
double simulate_v(SimState& s, BeliefNode& b, int depth, PlanContext& ctx, Rng& rng,
                  uint32_t& next_id, std::vector<PlanTrace::Update>* log);

struct BuiltTree {
  std::unique_ptr<BeliefNode> root;
  PlanStats stats;
};

/// Runs the iteration/time-budgeted tree construction shared by the shrinking
/// planner and the vanilla single-action baseline. The root is pre-expanded
/// with the agent's legal actions; throws std::domain_error when there are
/// none (boxed in).
BuiltTree build_tree(const BeliefMap& belief, const SimState& agent_template,
                     const PlannerConfig& cfg, const World& world, double altitude, Rng& rng,
                     PlanTrace* trace = nullptr);

bool is_non_sparse(const BeliefNode& node, double p_epsilon);

/// Greedy extraction: argmax-Q descent through most-visited observation
/// children, stopping at a non-sparse node, at max_level actions, or when no
/// visited edge remains. Falls back to the first edge when the root was built
/// but never selected from; throws std::domain_error on a root without edges.
std::vector<Action> get_action_sequence(const BeliefNode& root, int max_level, double p_epsilon);

PlanResult plan(const BeliefMap& belief, const SimState& agent_template, const PlannerConfig& cfg,
                const World& world, double altitude, Rng& rng, PlanTrace* trace = nullptr,
                std::unique_ptr<BeliefNode>* tree_out = nullptr);

struct HeightDecision {
  enum class Kind { Keep, Raise, NoFlyReplan };
  Kind kind = Kind::Keep;
  double altitude = 0.0;  // resulting altitude for Keep / Raise
};

/// Entry rule for a planned cell: keep altitude while the cell offers at
/// least tau flyable positions, otherwise climb by delta_h up to h_max; a
/// cell still blocked at h_max is reported for dynamic no-fly designation.
HeightDecision adjust_height(Cell cell, double altitude, const HeightConfig& hc,
                             const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                             const MapGeometry& geom);

}  // namespace gridsar
