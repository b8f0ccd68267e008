#pragma once

#include "gridsar/baselines.hpp"
#include "gridsar/scenario.hpp"

namespace gridsar {

enum class PlannerKind { Shrinking, Vanilla, Lawnmower, Greedy };

std::string_view to_string(PlannerKind k);
PlannerKind planner_kind_from_string(std::string_view s);

enum class TerminationReason { AllFound, EpochCap, BoxedIn };
std::string_view to_string(TerminationReason r);

struct EpisodeConfig {
  int max_epochs = 100;
  PlannerKind planner = PlannerKind::Shrinking;
  uint64_t seed = 0;
  bool record_events = false;
  /// When set, receives one serialized tree dump per decision epoch
  /// (POMCP planners only).
  std::vector<std::string>* tree_dumps = nullptr;
};

struct EpisodeResult {
  int epochs_used = 0;
  int targets_found = 0;
  std::vector<FinePosition> trajectory;
  double path_length_m = 0.0;
  /// Simulated mission (flight) time spent in each epoch, in milliseconds:
  /// epoch path length over cruise speed. Deterministic by construction.
  std::vector<double> wall_ms_per_epoch;
  TerminationReason terminated_by = TerminationReason::EpochCap;

  std::vector<Cell> target_cells;
  std::vector<int> found_epoch;  // -1 when never found
  double sim_time_s = 0.0;
  double planner_compute_ms = 0.0;  // measured, excluded from records
  std::vector<std::string> events;
};

struct NavigateResult {
  bool arrived = false;
  std::vector<FinePosition> path;  // start and waypoint inclusive
  double length_m = 0.0;
};

/// Surrogate navigator: shortest flyable raster path to the waypoint, or
/// Unreachable when the waypoint is invalid or disconnected. Throws
/// std::domain_error when `current` itself is not flyable.
NavigateResult navigate(const FinePosition& current, const FinePosition& waypoint,
                        const WorldSlice& slice, AStarGrid& astar);

NavigateResult navigate(const FinePosition& current, const FinePosition& waypoint,
                        const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                        double altitude, const MapGeometry& geom);

/// Indices of still-unfound targets co-located with the agent cell.
std::vector<int> capture_check(Cell agent, std::span<const Cell> targets, uint32_t found_mask);

/// One full mission: decision epochs until every target is found, the epoch
/// cap trips, or the agent is boxed in at maximum altitude. A capture in the
/// start cell counts as an epoch-0 pre-check. Bit-reproducible for a fixed
/// (scenario, config, seed).
EpisodeResult run_episode(const Scenario& sc, const EpisodeConfig& ec);

/// Plain-text record of one episode with the full resolved configuration.
std::string serialize_record(const EpisodeResult& r, const Scenario& sc, const EpisodeConfig& ec);

struct ParsedRecord {
  EpisodeResult result;
  std::string scenario_name;
  std::string planner;
  uint64_t seed = 0;
};
ParsedRecord parse_record(const std::string& text);

}  // namespace gridsar
