#pragma once

#include <span>
#include <vector>

#include "gridsar/geometry.hpp"

namespace gridsar {

/// Axis-aligned keep-out rectangle in meters. Containment is closed on all
/// edges: boundary points count as inside.
struct NoFlyZone {
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;

  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  friend bool operator==(const NoFlyZone&, const NoFlyZone&) = default;
};

/// Obstacle top heights sampled on the fine raster. A lattice point is flyable
/// at altitude h iff h is strictly above the obstacle top there.
class ObstacleMap {
 public:
  ObstacleMap() = default;
  explicit ObstacleMap(const MapGeometry& geom);

  double height_at(int rx, int ry) const { return height_[static_cast<size_t>(ry) * n_ + rx]; }
  int raster_n() const { return n_; }

  // Raises obstacle top to at least h over the rectangle (meters).
  void add_block(double x0, double y0, double x1, double y1, double h);

 private:
  int n_ = 0;
  double res_ = 1.0;
  std::vector<float> height_;
};

struct World {
  MapGeometry geom;
  ObstacleMap obstacles;
  std::vector<NoFlyZone> zones;
};

bool position_valid(const FinePosition& p, double altitude, const ObstacleMap& omap,
                    std::span<const NoFlyZone> zones, const MapGeometry& geom);

/// All raster lattice points inside `cell` that are flyable at `altitude`.
/// The size of the result is N_v(cell, altitude).
std::vector<FinePosition> valid_positions(Cell cell, double altitude, const ObstacleMap& omap,
                                          std::span<const NoFlyZone> zones,
                                          const MapGeometry& geom);

int valid_count(Cell cell, double altitude, const ObstacleMap& omap,
                std::span<const NoFlyZone> zones, const MapGeometry& geom);

/// Precomputed flyability of every raster point (and per-cell counts) at one
/// altitude. Planner, rollouts and the navigator all query this instead of
/// re-testing obstacle heights and zones point by point.
class WorldSlice {
 public:
  WorldSlice(const MapGeometry& geom, const ObstacleMap& omap, std::span<const NoFlyZone> zones,
             double altitude);

  bool raster_valid(int rx, int ry) const {
    return valid_[static_cast<size_t>(ry) * raster_n_ + rx] != 0;
  }
  bool raster_valid(RasterPoint r) const { return raster_valid(r.rx, r.ry); }
  int cell_valid_count(Cell c) const { return cell_counts_[cell_index(c, geom_.grid_n)]; }

  const MapGeometry& geom() const { return geom_; }
  double altitude() const { return altitude_; }
  int raster_n() const { return raster_n_; }
  const std::vector<uint8_t>& valid_mask() const { return valid_; }

  /// Flyable lattice point in `cell` nearest to `from` (ties: lowest ry, then
  /// rx). Empty when the cell has no flyable point.
  std::vector<FinePosition> cell_positions(Cell c) const;
  bool nearest_valid_in_cell(Cell c, const FinePosition& from, FinePosition& out) const;

 private:
  MapGeometry geom_;
  double altitude_ = 0.0;
  int raster_n_ = 0;
  std::vector<uint8_t> valid_;
  std::vector<int> cell_counts_;
};

}  // namespace gridsar
