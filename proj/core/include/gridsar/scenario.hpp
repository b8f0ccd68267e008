#pragma once

#include <string>

#include "gridsar/planner.hpp"

namespace gridsar {

/// Obstacle footprint in meters with a top height.
struct ObstacleBlock {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0, height_m = 0;
  friend bool operator==(const ObstacleBlock&, const ObstacleBlock&) = default;
};

struct BeliefSpec {
  BeliefKind kind = BeliefKind::Uniform;
  std::vector<BeliefPeak> peaks;
  std::vector<WeightedRegion> regions;  // optional weighted support, any kind
  friend bool operator==(const BeliefSpec&, const BeliefSpec&) = default;
};

/// Complete mission description: geometry, obstacles, keep-out zones, prior
/// belief, targets (fixed or drawn from the prior), start pose and every
/// solver knob. Serializes to the plain-text scenario format documented in
/// the README; parse(serialize(s)) == s.
struct Scenario {
  std::string name = "scenario";
  MapGeometry geom;
  std::vector<ObstacleBlock> obstacles;
  std::vector<NoFlyZone> zones;
  BeliefSpec belief;
  bool sample_targets = true;
  int target_count = 4;
  std::vector<FinePosition> targets;  // explicit mode
  FinePosition start{0, 0, 10.0};
  PlannerConfig planner;
  HeightConfig height;
  int max_epochs = 100;
  double speed_mps = 5.0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& sc);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

/// Rejects inconsistent inputs (start or explicit target inside a no-fly
/// zone, empty peak list for a peaks belief, bad config ranges, ...) with a
/// std::invalid_argument naming the offender.
void validate_scenario(const Scenario& sc);

World build_world(const Scenario& sc);
BeliefMap build_belief(const Scenario& sc);

/// Target cells for one episode: explicit positions, or a draw from the
/// prior keyed only by (scenario name, seed) so every planner sees the same
/// draw for the same seed. Sampled cells must be enterable at h_init and
/// non-sparse under the prior (below-threshold residual mass holds no
/// targets).
std::vector<Cell> draw_targets(const Scenario& sc, const World& world, const BeliefMap& prior,
                               uint64_t seed);

enum class ScenarioKind { Uniform, OnePeak, ThreePeaks, Corridor };

std::string_view to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(std::string_view s);

struct GenOverrides {
  std::optional<double> side_m;
  std::optional<int> grid_n;
  std::optional<int> target_count;
  std::optional<int> building_count;
  std::optional<int> zone_count;
};

/// Seeded generator for the 400 m / N=20 experiment family. Identical
/// (kind, seed, overrides) always produce byte-identical scenario files. The
/// map layout (buildings, zones, start) depends on the seed but not on the
/// belief kind, so sweeps and comparisons across kinds share terrain.
Scenario gen_scenario(ScenarioKind kind, uint64_t seed, const GenOverrides& overrides = {});

}  // namespace gridsar
