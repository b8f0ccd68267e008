#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gridsar {

/// Square L x L map partitioned into an N x N grid of equal cells, plus a
/// finer raster (default 1 m) used for obstacle queries and pathfinding.
struct MapGeometry {
  double side_m = 400.0;
  int grid_n = 20;
  double raster_res_m = 1.0;

  double cell_size_m() const { return side_m / grid_n; }
  int raster_n() const { return static_cast<int>(std::lround(side_m / raster_res_m)); }

  bool contains(double x, double y) const {
    return x >= 0.0 && x < side_m && y >= 0.0 && y < side_m;
  }

  void validate() const {
    if (side_m <= 0.0) throw std::invalid_argument("map side must be positive");
    if (grid_n < 1) throw std::invalid_argument("grid_n must be >= 1");
    if (raster_res_m <= 0.0 || raster_res_m > cell_size_m())
      throw std::invalid_argument("raster resolution must be in (0, cell size]");
  }
};

/// Grid cell: i indexes columns (east positive), j rows (north positive).
struct Cell {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct FinePosition {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const FinePosition&, const FinePosition&) = default;
};

inline bool in_grid(Cell c, const MapGeometry& g) {
  return c.i >= 0 && c.i < g.grid_n && c.j >= 0 && c.j < g.grid_n;
}

inline Cell cell_of(const FinePosition& p, const MapGeometry& g) {
  if (!g.contains(p.x, p.y)) throw std::domain_error("position outside map bounds");
  const double cs = g.cell_size_m();
  return Cell{static_cast<int>(std::floor(p.x / cs)), static_cast<int>(std::floor(p.y / cs))};
}

inline FinePosition cell_center(Cell c, const MapGeometry& g, double z = 0.0) {
  const double cs = g.cell_size_m();
  return FinePosition{(c.i + 0.5) * cs, (c.j + 0.5) * cs, z};
}

inline int cell_index(Cell c, int grid_n) { return c.j * grid_n + c.i; }
inline Cell cell_from_index(int idx, int grid_n) { return Cell{idx % grid_n, idx / grid_n}; }

/// Raster lattice point (coordinates rx * res, ry * res).
struct RasterPoint {
  int rx = 0;
  int ry = 0;
  friend bool operator==(const RasterPoint&, const RasterPoint&) = default;
};

inline RasterPoint raster_of(const FinePosition& p, const MapGeometry& g) {
  return RasterPoint{static_cast<int>(std::floor(p.x / g.raster_res_m)),
                     static_cast<int>(std::floor(p.y / g.raster_res_m))};
}

inline FinePosition raster_position(RasterPoint r, const MapGeometry& g, double z = 0.0) {
  return FinePosition{r.rx * g.raster_res_m, r.ry * g.raster_res_m, z};
}

/// Half-open raster index range [lo, hi) of lattice points inside cell slot k
/// along one axis: k*cell <= r*res < (k+1)*cell.
inline void raster_range(int k, const MapGeometry& g, int& lo, int& hi) {
  const double cs = g.cell_size_m();
  const double res = g.raster_res_m;
  lo = static_cast<int>(std::ceil(k * cs / res - 1e-9));
  hi = static_cast<int>(std::ceil((k + 1) * cs / res - 1e-9));
  if (hi > g.raster_n()) hi = g.raster_n();
}

/// Membership set over grid cells, cheap to copy along simulated trajectories.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(int grid_n)
      : n_(grid_n), bits_((static_cast<size_t>(grid_n) * grid_n + 63) / 64, 0) {}

  bool contains(Cell c) const {
    const int idx = cell_index(c, n_);
    return (bits_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void insert(Cell c) {
    const int idx = cell_index(c, n_);
    bits_[idx >> 6] |= uint64_t{1} << (idx & 63);
  }
  int count() const {
    int total = 0;
    for (uint64_t w : bits_) total += __builtin_popcountll(w);
    return total;
  }
  int grid_n() const { return n_; }

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  int n_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace gridsar
