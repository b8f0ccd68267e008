#include "gridsar/astar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace gridsar {

AStarGrid::AStarGrid(const WorldSlice& slice) : slice_(&slice), n_(slice.raster_n()) {
  const size_t cells = static_cast<size_t>(n_) * n_;
  xcoord_.resize(cells);
  ycoord_.resize(cells);
  for (int ry = 0; ry < n_; ++ry)
    for (int rx = 0; rx < n_; ++rx) {
      xcoord_[static_cast<size_t>(ry) * n_ + rx] = static_cast<uint16_t>(rx);
      ycoord_[static_cast<size_t>(ry) * n_ + rx] = static_cast<uint16_t>(ry);
    }
  g_.resize(cells);
  parent_.resize(cells);
  g_stamp_.assign(cells, 0);
  closed_stamp_.assign(cells, 0);
}

void AStarGrid::begin_query() {
  for (int b = 0; b < buckets_used_; ++b) buckets_[b].clear();
  buckets_used_ = 0;
  if (++stamp_ == 0) {  // stamp wrapped: scrub stale marks once every 2^32 queries
    std::fill(g_stamp_.begin(), g_stamp_.end(), 0);
    std::fill(closed_stamp_.begin(), closed_stamp_.end(), 0);
    stamp_ = 1;
  }
}

int AStarGrid::search(int start_idx, int goal_idx, bool need_parents) {
  begin_query();
  if (start_idx == goal_idx) return 0;

  const int gx = xcoord_[goal_idx];
  const int gy = ycoord_[goal_idx];
  const auto heuristic = [&](int idx) {
    return std::abs(static_cast<int>(xcoord_[idx]) - gx) +
           std::abs(static_cast<int>(ycoord_[idx]) - gy);
  };

  const auto push = [&](int idx, int f_rel) {
    if (f_rel >= static_cast<int>(buckets_.size())) buckets_.resize(f_rel + 1);
    buckets_[f_rel].push_back(static_cast<uint32_t>(idx));
    if (f_rel + 1 > buckets_used_) buckets_used_ = f_rel + 1;
  };

  const int f0 = heuristic(start_idx);
  g_[start_idx] = 0;
  g_stamp_[start_idx] = stamp_;
  parent_[start_idx] = -1;
  push(start_idx, 0);

  const auto& valid = slice_->valid_mask();
  int cur = 0;
  while (cur < buckets_used_) {
    if (buckets_[cur].empty()) {
      ++cur;
      continue;
    }
    const int idx = static_cast<int>(buckets_[cur].back());
    buckets_[cur].pop_back();
    if (closed_stamp_[idx] == stamp_) continue;
    const int g = g_[idx];
    if (g + heuristic(idx) - f0 != cur) continue;  // superseded entry
    closed_stamp_[idx] = stamp_;
    if (idx == goal_idx) return g;

    const int rx = xcoord_[idx];
    const int ry = ycoord_[idx];
    const int ng = g + 1;
    const auto relax = [&](int nb) {
      if (!valid[nb] || closed_stamp_[nb] == stamp_) return;
      if (g_stamp_[nb] == stamp_ && g_[nb] <= ng) return;
      g_[nb] = ng;
      g_stamp_[nb] = stamp_;
      if (need_parents) parent_[nb] = idx;
      push(nb, ng + heuristic(nb) - f0);
    };
    if (rx > 0) relax(idx - 1);
    if (rx + 1 < n_) relax(idx + 1);
    if (ry > 0) relax(idx - n_);
    if (ry + 1 < n_) relax(idx + n_);
  }
  return -1;
}

std::optional<double> AStarGrid::path_length_m(RasterPoint start, RasterPoint goal) {
  if (!slice_->raster_valid(start) || !slice_->raster_valid(goal))
    throw std::domain_error("A* endpoint is not a valid position");
  const int steps = search(start.ry * n_ + start.rx, goal.ry * n_ + goal.rx, false);
  if (steps < 0) return std::nullopt;
  return steps * slice_->geom().raster_res_m;
}

std::optional<std::vector<RasterPoint>> AStarGrid::find_path(RasterPoint start, RasterPoint goal) {
  if (!slice_->raster_valid(start) || !slice_->raster_valid(goal))
    throw std::domain_error("A* endpoint is not a valid position");
  const int goal_idx = goal.ry * n_ + goal.rx;
  const int steps = search(start.ry * n_ + start.rx, goal_idx, true);
  if (steps < 0) return std::nullopt;
  std::vector<RasterPoint> path(steps + 1);
  int idx = goal_idx;
  for (int k = steps; k >= 0; --k) {
    path[k] = RasterPoint{idx % n_, idx / n_};
    idx = parent_[idx];
  }
  return path;
}

std::optional<double> astar_path_length(const FinePosition& start, const FinePosition& goal,
                                        const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                                        double altitude, const MapGeometry& geom) {
  const WorldSlice slice(geom, omap, zones, altitude);
  AStarGrid grid(slice);
  return grid.path_length_m(raster_of(start, geom), raster_of(goal, geom));
}

}  // namespace gridsar
