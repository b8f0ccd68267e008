#include "gridsar/rollout.hpp"

#include <cmath>

namespace gridsar {

std::optional<FinePosition> sample_next_position(const FinePosition& current, Cell target_cell,
                                                 const RolloutConfig& cfg,
                                                 const WorldSlice& slice, Rng& rng) {
  if (!in_grid(target_cell, slice.geom())) throw std::domain_error("target cell outside grid");
  int xlo, xhi, ylo, yhi;
  raster_range(target_cell.i, slice.geom(), xlo, xhi);
  raster_range(target_cell.j, slice.geom(), ylo, yhi);
  const int nx = xhi - xlo;
  const int ny = yhi - ylo;
  if (nx <= 0 || ny <= 0) return std::nullopt;

  bool found = false;
  FinePosition best{};
  double best_d2 = 0.0;
  for (int k = 0; k < cfg.sample_count; ++k) {
    const int rx = xlo + static_cast<int>(rng.next_index(static_cast<uint32_t>(nx)));
    const int ry = ylo + static_cast<int>(rng.next_index(static_cast<uint32_t>(ny)));
    if (!slice.raster_valid(rx, ry)) continue;
    const FinePosition p = raster_position(RasterPoint{rx, ry}, slice.geom(), slice.altitude());
    const double dx = p.x - current.x, dy = p.y - current.y;
    const double d2 = dx * dx + dy * dy;
    if (!found || d2 < best_d2) {
      found = true;
      best = p;
      best_d2 = d2;
    }
  }
  if (!found) return std::nullopt;
  return best;
}

double rollout_step_value(double path_len_m, bool target_in_dest, double p_dest, double alpha,
                          double gamma, double scale_m) {
  const double payoff = (target_in_dest ? 1.0 : 0.0) + alpha * p_dest;
  return std::pow(gamma, path_len_m / scale_m) * payoff;
}

double rollout_value(const SimState& s, Cell dest_cell, const RewardParams& rp,
                     const RolloutConfig& cfg, double gamma, AStarGrid& astar, Rng& rng) {
  const WorldSlice& slice = astar.slice();
  const double scale =
      cfg.step_cost_scale_m > 0 ? cfg.step_cost_scale_m : slice.geom().cell_size_m();

  bool target_in_dest = false;
  for (size_t k = 0; k < s.targets.size(); ++k)
    if (!s.found(k) && s.targets[k] == dest_cell) target_in_dest = true;
  const double p_dest = rp.belief.at(dest_cell);

  if (dest_cell == s.agent_cell)
    return rollout_step_value(0.0, target_in_dest, p_dest, rp.alpha, gamma, scale);

  const auto sampled = sample_next_position(s.agent_pos, dest_cell, cfg, slice, rng);
  if (!sampled) return 0.0;

  RasterPoint from = raster_of(s.agent_pos, slice.geom());
  if (!slice.raster_valid(from)) {
    // Agent's nominal point can sit on an obstacle sample even though the
    // cell itself is enterable; fall back to the nearest flyable point.
    FinePosition adjusted{};
    if (!slice.nearest_valid_in_cell(s.agent_cell, s.agent_pos, adjusted)) return 0.0;
    from = raster_of(adjusted, slice.geom());
  }
  const auto len = astar.path_length_m(from, raster_of(*sampled, slice.geom()));
  if (!len) return 0.0;
  return rollout_step_value(*len, target_in_dest, p_dest, rp.alpha, gamma, scale);
}

}  // namespace gridsar
