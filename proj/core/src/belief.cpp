#include "gridsar/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridsar {

double BeliefMap::sum() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

bool BeliefMap::is_zero() const {
  for (double v : p_)
    if (v != 0.0) return false;
  return true;
}

Cell BeliefMap::argmax() const {
  size_t best = 0;
  for (size_t k = 1; k < p_.size(); ++k)
    if (p_[k] > p_[best]) best = k;
  return cell_from_index(static_cast<int>(best), n_);
}

void BeliefMap::normalize() {
  const double s = sum();
  if (s <= 0.0) throw std::domain_error("belief has zero total mass");
  for (double& v : p_) v /= s;
}

BeliefMap make_belief(BeliefKind kind, std::span<const BeliefPeak> peaks,
                      const MapGeometry& geom) {
  const int n = geom.grid_n;
  BeliefMap b(n);
  if (kind == BeliefKind::Uniform) {
    const double v = 1.0 / (static_cast<double>(n) * n);
    for (double& p : b.data()) p = v;
    return b;
  }
  if (peaks.empty()) throw std::domain_error("peaks belief requires at least one peak");
  for (const BeliefPeak& pk : peaks)
    if (pk.spread_cells <= 0.0) throw std::domain_error("peak spread must be positive");
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      for (const BeliefPeak& pk : peaks) {
        const double di = i - pk.center.i;
        const double dj = j - pk.center.j;
        v += pk.weight * std::exp(-(di * di + dj * dj) / (2.0 * pk.spread_cells * pk.spread_cells));
      }
      b.set(Cell{i, j}, v);
    }
  }
  b.normalize();
  return b;
}

BeliefMap mask_to_regions(const BeliefMap& b, std::span<const CellRect> regions) {
  if (regions.empty()) return b;
  const int n = b.grid_n();
  BeliefMap out(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Cell c{i, j};
      bool inside = false;
      for (const CellRect& r : regions)
        if (r.contains(c)) { inside = true; break; }
      if (inside) out.set(c, b.at(c));
    }
  }
  out.normalize();
  return out;
}

BeliefMap apply_region_weights(const BeliefMap& b, std::span<const WeightedRegion> regions) {
  if (regions.empty()) return b;
  const int n = b.grid_n();
  BeliefMap out(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Cell c{i, j};
      double w = 0.0;
      for (const WeightedRegion& r : regions)
        if (r.rect.contains(c)) w = std::max(w, r.weight);
      out.set(c, b.at(c) * w);
    }
  }
  out.normalize();
  return out;
}

BeliefMap belief_visit_update(const BeliefMap& b, Cell visited, bool /*target_found*/,
                              const CellSet& ever_visited) {
  const int n = b.grid_n();
  BeliefMap out = b;
  out.set(visited, 0.0);
  const double s = out.sum();
  if (s > 0.0) {
    for (double& v : out.data()) v /= s;
    return out;
  }
  // Mass exhausted: restart over cells never visited in this mission.
  int fresh = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Cell c{i, j};
      if (!ever_visited.contains(c) && !(c == visited)) ++fresh;
    }
  if (fresh == 0) return out;  // all-zero sentinel
  const double v = 1.0 / fresh;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Cell c{i, j};
      out.set(c, (!ever_visited.contains(c) && !(c == visited)) ? v : 0.0);
    }
  return out;
}

BeliefCdf::BeliefCdf(const BeliefMap& b) : n_(b.grid_n()) {
  cum_.reserve(b.data().size());
  double run = 0.0;
  for (double v : b.data()) {
    run += v;
    cum_.push_back(run);
  }
  total_ = run;
}

Cell BeliefCdf::sample(Rng& rng) const {
  const double u = rng.next_double() * total_;
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  size_t k = static_cast<size_t>(it - cum_.begin());
  if (k >= cum_.size()) k = cum_.size() - 1;
  return cell_from_index(static_cast<int>(k), n_);
}

}  // namespace gridsar
