#include "gridsar/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridsar {

ObstacleMap::ObstacleMap(const MapGeometry& geom)
    : n_(geom.raster_n()), res_(geom.raster_res_m),
      height_(static_cast<size_t>(n_) * n_, 0.0f) {}

void ObstacleMap::add_block(double x0, double y0, double x1, double y1, double h) {
  if (x1 < x0) std::swap(x0, x1);
  if (y1 < y0) std::swap(y0, y1);
  const int rx0 = std::max(0, static_cast<int>(std::floor(x0 / res_)));
  const int ry0 = std::max(0, static_cast<int>(std::floor(y0 / res_)));
  const int rx1 = std::min(n_ - 1, static_cast<int>(std::floor(x1 / res_)));
  const int ry1 = std::min(n_ - 1, static_cast<int>(std::floor(y1 / res_)));
  for (int ry = ry0; ry <= ry1; ++ry) {
    for (int rx = rx0; rx <= rx1; ++rx) {
      // Block covers the lattice point itself, not just the cell interior.
      const double px = rx * res_;
      const double py = ry * res_;
      if (px >= x0 && px <= x1 && py >= y0 && py <= y1) {
        float& cur = height_[static_cast<size_t>(ry) * n_ + rx];
        cur = std::max(cur, static_cast<float>(h));
      }
    }
  }
}

bool position_valid(const FinePosition& p, double altitude, const ObstacleMap& omap,
                    std::span<const NoFlyZone> zones, const MapGeometry& geom) {
  if (!geom.contains(p.x, p.y)) return false;
  const RasterPoint r = raster_of(p, geom);
  if (altitude <= omap.height_at(r.rx, r.ry)) return false;
  for (const NoFlyZone& z : zones)
    if (z.contains(p.x, p.y)) return false;
  return true;
}

std::vector<FinePosition> valid_positions(Cell cell, double altitude, const ObstacleMap& omap,
                                          std::span<const NoFlyZone> zones,
                                          const MapGeometry& geom) {
  if (!in_grid(cell, geom)) throw std::domain_error("cell outside grid");
  std::vector<FinePosition> out;
  int xlo, xhi, ylo, yhi;
  raster_range(cell.i, geom, xlo, xhi);
  raster_range(cell.j, geom, ylo, yhi);
  for (int ry = ylo; ry < yhi; ++ry) {
    for (int rx = xlo; rx < xhi; ++rx) {
      const FinePosition p = raster_position(RasterPoint{rx, ry}, geom, altitude);
      if (position_valid(p, altitude, omap, zones, geom)) out.push_back(p);
    }
  }
  return out;
}

int valid_count(Cell cell, double altitude, const ObstacleMap& omap,
                std::span<const NoFlyZone> zones, const MapGeometry& geom) {
  if (!in_grid(cell, geom)) throw std::domain_error("cell outside grid");
  int count = 0;
  int xlo, xhi, ylo, yhi;
  raster_range(cell.i, geom, xlo, xhi);
  raster_range(cell.j, geom, ylo, yhi);
  for (int ry = ylo; ry < yhi; ++ry)
    for (int rx = xlo; rx < xhi; ++rx)
      if (position_valid(raster_position(RasterPoint{rx, ry}, geom, altitude), altitude, omap,
                         zones, geom))
        ++count;
  return count;
}

WorldSlice::WorldSlice(const MapGeometry& geom, const ObstacleMap& omap,
                       std::span<const NoFlyZone> zones, double altitude)
    : geom_(geom), altitude_(altitude), raster_n_(geom.raster_n()),
      valid_(static_cast<size_t>(raster_n_) * raster_n_, 0),
      cell_counts_(static_cast<size_t>(geom.grid_n) * geom.grid_n, 0) {
  const double res = geom.raster_res_m;
  const double cs = geom.cell_size_m();
  for (int ry = 0; ry < raster_n_; ++ry) {
    const double py = ry * res;
    const int cj = std::min(geom.grid_n - 1, static_cast<int>(std::floor(py / cs)));
    for (int rx = 0; rx < raster_n_; ++rx) {
      const double px = rx * res;
      if (altitude <= omap.height_at(rx, ry)) continue;
      bool zoned = false;
      for (const NoFlyZone& z : zones)
        if (z.contains(px, py)) { zoned = true; break; }
      if (zoned) continue;
      valid_[static_cast<size_t>(ry) * raster_n_ + rx] = 1;
      const int ci = std::min(geom.grid_n - 1, static_cast<int>(std::floor(px / cs)));
      ++cell_counts_[static_cast<size_t>(cj) * geom.grid_n + ci];
    }
  }
}

std::vector<FinePosition> WorldSlice::cell_positions(Cell c) const {
  std::vector<FinePosition> out;
  int xlo, xhi, ylo, yhi;
  raster_range(c.i, geom_, xlo, xhi);
  raster_range(c.j, geom_, ylo, yhi);
  for (int ry = ylo; ry < yhi; ++ry)
    for (int rx = xlo; rx < xhi; ++rx)
      if (raster_valid(rx, ry)) out.push_back(raster_position(RasterPoint{rx, ry}, geom_, altitude_));
  return out;
}

bool WorldSlice::nearest_valid_in_cell(Cell c, const FinePosition& from, FinePosition& out) const {
  int xlo, xhi, ylo, yhi;
  raster_range(c.i, geom_, xlo, xhi);
  raster_range(c.j, geom_, ylo, yhi);
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int ry = ylo; ry < yhi; ++ry) {
    for (int rx = xlo; rx < xhi; ++rx) {
      if (!raster_valid(rx, ry)) continue;
      const FinePosition p = raster_position(RasterPoint{rx, ry}, geom_, altitude_);
      const double dx = p.x - from.x, dy = p.y - from.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        out = p;
        found = true;
      }
    }
  }
  return found;
}

}  // namespace gridsar
