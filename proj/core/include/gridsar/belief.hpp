#pragma once

#include <span>
#include <vector>

#include "gridsar/geometry.hpp"
#include "gridsar/rng.hpp"

namespace gridsar {

/// Normalized probability of a target being present, per grid cell. The one
/// exception to the sum-to-one invariant is the all-zero sentinel reached when
/// every cell has been visited without accounting for all targets.
class BeliefMap {
 public:
  BeliefMap() = default;
  explicit BeliefMap(int grid_n) : n_(grid_n), p_(static_cast<size_t>(grid_n) * grid_n, 0.0) {}

  double at(Cell c) const { return p_[cell_index(c, n_)]; }
  void set(Cell c, double v) { p_[cell_index(c, n_)] = v; }
  int grid_n() const { return n_; }
  std::span<const double> data() const { return p_; }
  std::span<double> data() { return p_; }

  double sum() const;
  bool is_zero() const;
  /// Highest-probability cell; ties resolved to the lowest row-major index.
  Cell argmax() const;
  void normalize();  // throws std::domain_error on zero total mass

  friend bool operator==(const BeliefMap&, const BeliefMap&) = default;

 private:
  int n_ = 0;
  std::vector<double> p_;
};

enum class BeliefKind { Uniform, Peaks };

/// Isotropic Gaussian bump in cell coordinates.
struct BeliefPeak {
  Cell center;
  double spread_cells = 1.0;
  double weight = 1.0;
  friend bool operator==(const BeliefPeak&, const BeliefPeak&) = default;
};

BeliefMap make_belief(BeliefKind kind, std::span<const BeliefPeak> peaks, const MapGeometry& geom);

/// Inclusive cell rectangle.
struct CellRect {
  int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
  bool contains(Cell c) const { return c.i >= i0 && c.i <= i1 && c.j >= j0 && c.j <= j1; }
  friend bool operator==(const CellRect&, const CellRect&) = default;
};

/// Zero out everything outside the union of `regions`, then renormalize.
BeliefMap mask_to_regions(const BeliefMap& b, std::span<const CellRect> regions);

/// Support region with a relative priority; cells outside every region drop
/// to zero, cells inside scale by the largest covering weight.
struct WeightedRegion {
  CellRect rect;
  double weight = 1.0;
  friend bool operator==(const WeightedRegion&, const WeightedRegion&) = default;
};

BeliefMap apply_region_weights(const BeliefMap& b, std::span<const WeightedRegion> regions);

/// Negative/positive observation update for a perfect in-cell detector: the
/// visited cell's mass drops to zero and the rest renormalizes. When mass runs
/// out with targets still missing, reset to uniform over never-visited cells
/// (all-zero sentinel if none remain). `ever_visited` is the mission-lifetime
/// visit record needed by the reset rule.
BeliefMap belief_visit_update(const BeliefMap& b, Cell visited, bool target_found,
                              const CellSet& ever_visited);

/// Cumulative distribution for drawing cells proportionally to belief mass.
class BeliefCdf {
 public:
  explicit BeliefCdf(const BeliefMap& b);
  Cell sample(Rng& rng) const;
  bool valid() const { return total_ > 0.0; }

 private:
  int n_ = 0;
  double total_ = 0.0;
  std::vector<double> cum_;
};

}  // namespace gridsar
