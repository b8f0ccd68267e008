#pragma once

#include <optional>
#include <vector>

#include "gridsar/world.hpp"

namespace gridsar {

/// 4-connected shortest paths on the raster lattice of one WorldSlice.
///
/// This runs thousands of times per decision epoch (one query per rollout),
/// so it avoids per-query allocation and clearing: scratch arrays are
/// generation-stamped and the open set is a bucket queue indexed by f value.
/// With unit step costs and the Manhattan heuristic, popped f values never
/// decrease, so a forward-only bucket cursor implements exact A*. LIFO order
/// inside a bucket digs straight toward the goal on open ground.
///
/// Not thread-safe: one instance per worker. The slice must outlive the grid.
class AStarGrid {
 public:
  explicit AStarGrid(const WorldSlice& slice);

  /// Shortest path length in meters, or nullopt when disconnected.
  /// Throws std::domain_error if either endpoint is not flyable.
  std::optional<double> path_length_m(RasterPoint start, RasterPoint goal);

  /// As above but reconstructs the lattice path (start and goal inclusive).
  std::optional<std::vector<RasterPoint>> find_path(RasterPoint start, RasterPoint goal);

  const WorldSlice& slice() const { return *slice_; }

 private:
  // Returns goal's step count, or -1 when disconnected.
  int search(int start_idx, int goal_idx, bool need_parents);
  void begin_query();

  const WorldSlice* slice_;
  int n_ = 0;
  std::vector<uint16_t> xcoord_, ycoord_;
  std::vector<int32_t> g_;
  std::vector<int32_t> parent_;
  std::vector<uint32_t> g_stamp_, closed_stamp_;
  std::vector<std::vector<uint32_t>> buckets_;
  int buckets_used_ = 0;
  uint32_t stamp_ = 0;
};

/// One-shot convenience wrapper; builds the slice and scratch per call.
/// Hot paths should hold an AStarGrid instead.
std::optional<double> astar_path_length(const FinePosition& start, const FinePosition& goal,
                                        const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                                        double altitude, const MapGeometry& geom);

}  // namespace gridsar
