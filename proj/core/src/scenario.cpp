#include "gridsar/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gridsar/detail/text.hpp"

namespace gridsar {

using detail::fmt;
using detail::parse_double;
using detail::parse_int;

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Uniform: return "uniform";
    case ScenarioKind::OnePeak: return "one_peak";
    case ScenarioKind::ThreePeaks: return "three_peaks";
    case ScenarioKind::Corridor: return "corridor";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(std::string_view s) {
  if (s == "uniform") return ScenarioKind::Uniform;
  if (s == "one_peak") return ScenarioKind::OnePeak;
  if (s == "three_peaks") return ScenarioKind::ThreePeaks;
  if (s == "corridor") return ScenarioKind::Corridor;
  throw std::invalid_argument("unknown scenario kind: " + std::string(s));
}

std::string serialize_scenario(const Scenario& sc) {
  std::string out;
  out += "# gridsar scenario v1\n";
  out += detail::kv("name", sc.name);
  out += detail::kv("map.side_m", fmt(sc.geom.side_m));
  out += detail::kv("map.grid_n", std::to_string(sc.geom.grid_n));
  out += detail::kv("map.raster_res_m", fmt(sc.geom.raster_res_m));
  out += "start " + fmt(sc.start.x) + " " + fmt(sc.start.y) + " " + fmt(sc.start.z) + "\n";
  out += detail::kv("belief.kind", sc.belief.kind == BeliefKind::Uniform ? "uniform" : "peaks");
  for (const BeliefPeak& p : sc.belief.peaks)
    out += "belief.peak " + std::to_string(p.center.i) + " " + std::to_string(p.center.j) + " " +
           fmt(p.spread_cells) + " " + fmt(p.weight) + "\n";
  for (const WeightedRegion& r : sc.belief.regions)
    out += "belief.region " + std::to_string(r.rect.i0) + " " + std::to_string(r.rect.j0) + " " +
           std::to_string(r.rect.i1) + " " + std::to_string(r.rect.j1) + " " + fmt(r.weight) +
           "\n";
  for (const ObstacleBlock& b : sc.obstacles)
    out += "obstacle " + fmt(b.x0) + " " + fmt(b.y0) + " " + fmt(b.x1) + " " + fmt(b.y1) + " " +
           fmt(b.height_m) + "\n";
  for (const NoFlyZone& z : sc.zones)
    out += "nofly " + fmt(z.x_min) + " " + fmt(z.y_min) + " " + fmt(z.x_max) + " " +
           fmt(z.y_max) + "\n";
  out += detail::kv("targets.mode", sc.sample_targets ? "sample" : "explicit");
  out += detail::kv("targets.count", std::to_string(sc.target_count));
  for (const FinePosition& t : sc.targets)
    out += "target " + fmt(t.x) + " " + fmt(t.y) + " " + fmt(t.z) + "\n";
  out += detail::kv("planner.max_iterations", std::to_string(sc.planner.max_iterations));
  out += detail::kv("planner.max_time_ms", fmt(sc.planner.max_time_ms));
  out += detail::kv("planner.max_level", std::to_string(sc.planner.max_level));
  out += detail::kv("planner.p_epsilon",
                    sc.planner.p_epsilon ? fmt(*sc.planner.p_epsilon) : "auto");
  out += detail::kv("planner.gamma", fmt(sc.planner.gamma));
  out += detail::kv("planner.c_uct", fmt(sc.planner.c_uct));
  out += detail::kv("planner.max_depth", std::to_string(sc.planner.max_depth));
  out += detail::kv("planner.alpha", fmt(sc.planner.alpha));
  out += detail::kv("rollout.samples", std::to_string(sc.planner.rollout.sample_count));
  out += detail::kv("rollout.step_scale_m", sc.planner.rollout.step_cost_scale_m > 0
                                                ? fmt(sc.planner.rollout.step_cost_scale_m)
                                                : "auto");
  out += detail::kv("height.tau", std::to_string(sc.height.tau));
  out += detail::kv("height.delta_h_m", fmt(sc.height.delta_h_m));
  out += detail::kv("height.h_max_m", fmt(sc.height.h_max_m));
  out += detail::kv("height.h_init_m", fmt(sc.height.h_init_m));
  out += detail::kv("episode.max_epochs", std::to_string(sc.max_epochs));
  out += detail::kv("episode.speed_mps", fmt(sc.speed_mps));
  return out;
}

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  sc.belief.kind = BeliefKind::Uniform;
  std::set<std::string> seen;
  const auto scalar_once = [&](const std::string& key) {
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate scenario key: " + key);
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::vector<std::string> vals;
    std::string tok;
    while (ls >> tok) vals.push_back(tok);
    const auto need = [&](size_t n) {
      if (vals.size() != n)
        throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": '" + key +
                                    "' expects " + std::to_string(n) + " values");
    };
    if (key == "name") {
      need(1);
      scalar_once(key);
      sc.name = vals[0];
    } else if (key == "map.side_m") {
      need(1);
      scalar_once(key);
      sc.geom.side_m = parse_double(vals[0]);
    } else if (key == "map.grid_n") {
      need(1);
      scalar_once(key);
      sc.geom.grid_n = static_cast<int>(parse_int(vals[0]));
    } else if (key == "map.raster_res_m") {
      need(1);
      scalar_once(key);
      sc.geom.raster_res_m = parse_double(vals[0]);
    } else if (key == "start") {
      need(3);
      scalar_once(key);
      sc.start = {parse_double(vals[0]), parse_double(vals[1]), parse_double(vals[2])};
    } else if (key == "belief.kind") {
      need(1);
      scalar_once(key);
      if (vals[0] == "uniform")
        sc.belief.kind = BeliefKind::Uniform;
      else if (vals[0] == "peaks")
        sc.belief.kind = BeliefKind::Peaks;
      else
        throw std::invalid_argument("belief.kind must be uniform or peaks");
    } else if (key == "belief.peak") {
      need(4);
      sc.belief.peaks.push_back(BeliefPeak{
          Cell{static_cast<int>(parse_int(vals[0])), static_cast<int>(parse_int(vals[1]))},
          parse_double(vals[2]), parse_double(vals[3])});
    } else if (key == "belief.region") {
      if (vals.size() != 4 && vals.size() != 5)
        throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                    ": belief.region expects 4 or 5 values");
      WeightedRegion r;
      r.rect = CellRect{static_cast<int>(parse_int(vals[0])), static_cast<int>(parse_int(vals[1])),
                        static_cast<int>(parse_int(vals[2])), static_cast<int>(parse_int(vals[3]))};
      r.weight = vals.size() == 5 ? parse_double(vals[4]) : 1.0;
      sc.belief.regions.push_back(r);
    } else if (key == "obstacle") {
      need(5);
      sc.obstacles.push_back(ObstacleBlock{parse_double(vals[0]), parse_double(vals[1]),
                                           parse_double(vals[2]), parse_double(vals[3]),
                                           parse_double(vals[4])});
    } else if (key == "nofly") {
      need(4);
      sc.zones.push_back(NoFlyZone{parse_double(vals[0]), parse_double(vals[1]),
                                   parse_double(vals[2]), parse_double(vals[3])});
    } else if (key == "targets.mode") {
      need(1);
      scalar_once(key);
      if (vals[0] == "sample")
        sc.sample_targets = true;
      else if (vals[0] == "explicit")
        sc.sample_targets = false;
      else
        throw std::invalid_argument("targets.mode must be sample or explicit");
    } else if (key == "targets.count") {
      need(1);
      scalar_once(key);
      sc.target_count = static_cast<int>(parse_int(vals[0]));
    } else if (key == "target") {
      need(3);
      sc.targets.push_back(
          {parse_double(vals[0]), parse_double(vals[1]), parse_double(vals[2])});
    } else if (key == "planner.max_iterations") {
      need(1);
      scalar_once(key);
      sc.planner.max_iterations = static_cast<int>(parse_int(vals[0]));
    } else if (key == "planner.max_time_ms") {
      need(1);
      scalar_once(key);
      sc.planner.max_time_ms = parse_double(vals[0]);
    } else if (key == "planner.max_level") {
      need(1);
      scalar_once(key);
      sc.planner.max_level = static_cast<int>(parse_int(vals[0]));
    } else if (key == "planner.p_epsilon") {
      need(1);
      scalar_once(key);
      if (vals[0] == "auto")
        sc.planner.p_epsilon.reset();
      else
        sc.planner.p_epsilon = parse_double(vals[0]);
    } else if (key == "planner.gamma") {
      need(1);
      scalar_once(key);
      sc.planner.gamma = parse_double(vals[0]);
    } else if (key == "planner.c_uct") {
      need(1);
      scalar_once(key);
      sc.planner.c_uct = parse_double(vals[0]);
    } else if (key == "planner.max_depth") {
      need(1);
      scalar_once(key);
      sc.planner.max_depth = static_cast<int>(parse_int(vals[0]));
    } else if (key == "planner.alpha") {
      need(1);
      scalar_once(key);
      sc.planner.alpha = parse_double(vals[0]);
    } else if (key == "rollout.samples") {
      need(1);
      scalar_once(key);
      sc.planner.rollout.sample_count = static_cast<int>(parse_int(vals[0]));
    } else if (key == "rollout.step_scale_m") {
      need(1);
      scalar_once(key);
      sc.planner.rollout.step_cost_scale_m = vals[0] == "auto" ? 0.0 : parse_double(vals[0]);
    } else if (key == "height.tau") {
      need(1);
      scalar_once(key);
      sc.height.tau = static_cast<int>(parse_int(vals[0]));
    } else if (key == "height.delta_h_m") {
      need(1);
      scalar_once(key);
      sc.height.delta_h_m = parse_double(vals[0]);
    } else if (key == "height.h_max_m") {
      need(1);
      scalar_once(key);
      sc.height.h_max_m = parse_double(vals[0]);
    } else if (key == "height.h_init_m") {
      need(1);
      scalar_once(key);
      sc.height.h_init_m = parse_double(vals[0]);
    } else if (key == "episode.max_epochs") {
      need(1);
      scalar_once(key);
      sc.max_epochs = static_cast<int>(parse_int(vals[0]));
    } else if (key == "episode.speed_mps") {
      need(1);
      scalar_once(key);
      sc.speed_mps = parse_double(vals[0]);
    } else {
      throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << serialize_scenario(sc);
}

void validate_scenario(const Scenario& sc) {
  sc.geom.validate();
  sc.planner.validate();
  sc.height.validate();
  if (sc.max_epochs < 1) throw std::invalid_argument(sc.name + ": max_epochs must be >= 1");
  if (sc.speed_mps <= 0) throw std::invalid_argument(sc.name + ": speed must be positive");
  if (!sc.geom.contains(sc.start.x, sc.start.y))
    throw std::invalid_argument(sc.name + ": start outside map");
  for (const NoFlyZone& z : sc.zones) {
    if (!(z.x_min < z.x_max) || !(z.y_min < z.y_max))
      throw std::invalid_argument(sc.name + ": degenerate no-fly zone");
    if (z.contains(sc.start.x, sc.start.y))
      throw std::invalid_argument(sc.name + ": start inside a no-fly zone");
  }
  for (const ObstacleBlock& b : sc.obstacles)
    if (b.height_m < 0 || !(b.x0 < b.x1) || !(b.y0 < b.y1))
      throw std::invalid_argument(sc.name + ": degenerate obstacle block");
  if (sc.belief.kind == BeliefKind::Peaks && sc.belief.peaks.empty())
    throw std::invalid_argument(sc.name + ": peaks belief without peaks");
  for (const BeliefPeak& p : sc.belief.peaks) {
    if (!in_grid(p.center, sc.geom))
      throw std::invalid_argument(sc.name + ": peak center outside grid");
    if (p.spread_cells <= 0) throw std::invalid_argument(sc.name + ": peak spread must be > 0");
  }
  for (const WeightedRegion& r : sc.belief.regions) {
    if (r.rect.i0 > r.rect.i1 || r.rect.j0 > r.rect.j1 || r.rect.i0 < 0 || r.rect.j0 < 0 ||
        r.rect.i1 >= sc.geom.grid_n || r.rect.j1 >= sc.geom.grid_n)
      throw std::invalid_argument(sc.name + ": belief region outside grid");
    if (r.weight <= 0.0)
      throw std::invalid_argument(sc.name + ": belief region weight must be positive");
  }
  if (sc.sample_targets) {
    if (sc.target_count < 1)
      throw std::invalid_argument(sc.name + ": sampled targets need targets.count >= 1");
  } else {
    if (sc.targets.empty())
      throw std::invalid_argument(sc.name + ": explicit mode requires target lines");
    for (const FinePosition& t : sc.targets) {
      if (!sc.geom.contains(t.x, t.y))
        throw std::invalid_argument(sc.name + ": target outside map");
      for (const NoFlyZone& z : sc.zones)
        if (z.contains(t.x, t.y))
          throw std::invalid_argument(sc.name + ": target inside a no-fly zone");
    }
  }
  // The start cell must offer somewhere to hover at mission altitude.
  const World w = build_world(sc);
  if (valid_count(cell_of(sc.start, sc.geom), sc.height.h_init_m, w.obstacles, w.zones,
                  sc.geom) < 1)
    throw std::invalid_argument(sc.name + ": start cell has no flyable position at h_init");
}

World build_world(const Scenario& sc) {
  World w;
  w.geom = sc.geom;
  w.obstacles = ObstacleMap(sc.geom);
  for (const ObstacleBlock& b : sc.obstacles) w.obstacles.add_block(b.x0, b.y0, b.x1, b.y1, b.height_m);
  w.zones = sc.zones;
  for (NoFlyZone& z : w.zones) {  // clip to map bounds
    z.x_min = std::max(z.x_min, 0.0);
    z.y_min = std::max(z.y_min, 0.0);
    z.x_max = std::min(z.x_max, sc.geom.side_m);
    z.y_max = std::min(z.y_max, sc.geom.side_m);
  }
  return w;
}

BeliefMap build_belief(const Scenario& sc) {
  BeliefMap b = make_belief(sc.belief.kind, sc.belief.peaks, sc.geom);
  if (!sc.belief.regions.empty()) b = apply_region_weights(b, sc.belief.regions);
  return b;
}

std::vector<Cell> draw_targets(const Scenario& sc, const World& world, const BeliefMap& prior,
                               uint64_t seed) {
  if (!sc.sample_targets) {
    std::vector<Cell> cells;
    cells.reserve(sc.targets.size());
    for (const FinePosition& t : sc.targets) cells.push_back(cell_of(t, sc.geom));
    return cells;
  }
  // Same stream for every planner: draws depend only on (scenario name, seed).
  Rng rng(Rng::mix(seed) ^ fnv1a64(sc.name.data(), sc.name.size()), kStreamTargets);
  const BeliefCdf cdf(prior);
  if (!cdf.valid()) throw std::invalid_argument(sc.name + ": prior has no mass to sample");
  const double p_eps = sc.planner.resolved_p_epsilon(sc.geom.grid_n);
  std::vector<Cell> cells;
  cells.reserve(sc.target_count);
  for (int k = 0; k < sc.target_count; ++k) {
    Cell c;
    bool placed = false;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      c = cdf.sample(rng);
      // Targets sit in non-sparse cells the agent can enter at mission
      // altitude; residual below-threshold mass carries no targets.
      if (prior.at(c) <= p_eps) continue;
      if (valid_count(c, sc.height.h_init_m, world.obstacles, world.zones, sc.geom) >=
          sc.height.tau) {
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::invalid_argument(sc.name + ": belief mass concentrated on blocked cells");
    cells.push_back(c);
  }
  return cells;
}

namespace {

double cell_dist(Cell a, Cell b) {
  const double di = a.i - b.i, dj = a.j - b.j;
  return std::sqrt(di * di + dj * dj);
}

}  // namespace

Scenario gen_scenario(ScenarioKind kind, uint64_t seed, const GenOverrides& ov) {
  Scenario sc;
  sc.geom.side_m = ov.side_m.value_or(400.0);
  sc.geom.grid_n = ov.grid_n.value_or(20);
  sc.geom.raster_res_m = 1.0;
  sc.geom.validate();
  const int n = sc.geom.grid_n;
  sc.name = std::string(to_string(kind)) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
  sc.target_count = ov.target_count.value_or(4);

  if (kind == ScenarioKind::Corridor) {
    // Fixed fixture: a 12-cell straight run toward a tight far-end peak, no
    // terrain. Only the peak cell is non-sparse, so multi-step extraction can
    // run the full corridor.
    const Cell start{4, n / 2};
    const Cell goal{16, n / 2};
    sc.belief.kind = BeliefKind::Peaks;
    sc.belief.peaks.push_back(BeliefPeak{goal, 0.25, 1.0});
    sc.sample_targets = false;
    sc.target_count = 1;
    sc.targets.push_back(cell_center(goal, sc.geom, 0.0));
    sc.start = cell_center(start, sc.geom, sc.height.h_init_m);
    sc.planner.alpha = 0.0;
    sc.planner.gamma = 0.995;
    sc.planner.rollout.step_cost_scale_m = 2.0;
    return sc;
  }

  Rng terrain(seed, kStreamScenario);
  // Buildings: rectangles the height-adjustment logic can always out-climb.
  const int building_count = ov.building_count.value_or(6 + static_cast<int>(terrain.next_index(5)));
  for (int b = 0; b < building_count; ++b) {
    const double w = terrain.uniform_int(16, 56);
    const double h = terrain.uniform_int(16, 56);
    const double x = terrain.uniform_int(0, static_cast<int>(sc.geom.side_m - w));
    const double y = terrain.uniform_int(0, static_cast<int>(sc.geom.side_m - h));
    const double top = terrain.uniform_int(6, 24);
    sc.obstacles.push_back(ObstacleBlock{x, y, x + w, y + h, top});
  }
  const int zone_count = ov.zone_count.value_or(static_cast<int>(terrain.next_index(4)));
  for (int z = 0; z < zone_count; ++z) {
    const double w = terrain.uniform_int(20, 60);
    const double h = terrain.uniform_int(20, 60);
    const double x = terrain.uniform_int(0, static_cast<int>(sc.geom.side_m - w));
    const double y = terrain.uniform_int(0, static_cast<int>(sc.geom.side_m - h));
    sc.zones.push_back(NoFlyZone{x, y, x + w, y + h});
  }

  const World world = build_world(sc);
  const auto cell_open = [&](Cell c) {
    return valid_count(c, sc.height.h_init_m, world.obstacles, world.zones, sc.geom) >=
           sc.height.tau;
  };

  // Belief placement; support cells drive the start-distance constraint.
  Rng bel(Rng::mix(seed) ^ 0x62656c69656601ULL, kStreamScenario);
  std::vector<Cell> support;
  if (kind == ScenarioKind::Uniform) {
    sc.belief.kind = BeliefKind::Uniform;
    // Two widely separated three-cell search strips; uniform mass inside
    // them only.
    for (int patch = 0; patch < 2; ++patch) {
      for (int attempt = 0; attempt < 2000; ++attempt) {
        const int i0 = bel.uniform_int(1, n - 4);
        const int j0 = bel.uniform_int(1, n - 2);
        const CellRect r{i0, j0, i0 + 2, j0};
        bool ok = true;
        for (int i = r.i0; i <= r.i1 && ok; ++i)
          for (int j = r.j0; j <= r.j1 && ok; ++j) ok = cell_open(Cell{i, j});
        if (ok && patch == 1) {
          const CellRect& other = sc.belief.regions.front().rect;
          const Cell c0{(other.i0 + other.i1) / 2, (other.j0 + other.j1) / 2};
          const Cell c1{(r.i0 + r.i1) / 2, (r.j0 + r.j1) / 2};
          if (cell_dist(c0, c1) < 8.0) ok = false;
        }
        if (ok) {
          sc.belief.regions.push_back(WeightedRegion{r, 1.0});
          for (int i = r.i0; i <= r.i1; ++i)
            for (int j = r.j0; j <= r.j1; ++j) support.push_back(Cell{i, j});
          break;
        }
      }
    }
    if (sc.belief.regions.size() != 2)
      throw std::runtime_error(sc.name + ": could not place search areas");
    sc.planner.alpha = 0.0;
  } else {
    sc.belief.kind = BeliefKind::Peaks;
    const int peak_count = kind == ScenarioKind::OnePeak ? 1 : 3;
    for (int p = 0; p < peak_count; ++p) {
      for (int attempt = 0; attempt < 2000; ++attempt) {
        const Cell c{bel.uniform_int(2, n - 3), bel.uniform_int(2, n - 3)};
        if (!cell_open(c)) continue;
        bool ok = true;
        for (const BeliefPeak& prev : sc.belief.peaks)
          if (cell_dist(prev.center, c) < 9.0) ok = false;
        if (!ok) continue;
        sc.belief.peaks.push_back(BeliefPeak{c, 0.9, 1.0});
        support.push_back(c);
        break;
      }
    }
    if (static_cast<int>(sc.belief.peaks.size()) != peak_count)
      throw std::runtime_error(sc.name + ": could not place belief peaks");
    sc.planner.alpha = 10.0;
  }
  sc.planner.gamma = 0.995;
  // Discounting per 2 m of A* path keeps the rollout gradient visible over
  // map-scale distances; per-cell discounting flattens below sampling noise.
  sc.planner.rollout.step_cost_scale_m = 2.0;

  // Start: flyable cell a meaningful approach away from the search areas.
  Rng st(Rng::mix(seed) ^ 0x73746172747701ULL, kStreamScenario);
  Cell start_cell{0, 0};
  bool placed = false;
  for (double min_dist = 10.0; !placed && min_dist >= 0.0; min_dist -= 5.0) {
    for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
      const Cell c{st.uniform_int(0, n - 1), st.uniform_int(0, n - 1)};
      if (!cell_open(c)) continue;
      double nearest = 1e9;
      for (Cell s : support) nearest = std::min(nearest, cell_dist(c, s));
      if (nearest < min_dist) continue;
      start_cell = c;
      placed = true;
    }
  }
  if (!placed) throw std::runtime_error(sc.name + ": could not place start");
  const auto options = valid_positions(start_cell, sc.height.h_init_m, world.obstacles,
                                       world.zones, sc.geom);
  const FinePosition center = cell_center(start_cell, sc.geom, sc.height.h_init_m);
  FinePosition best = options.front();
  double best_d = 1e18;
  for (const FinePosition& p : options) {
    const double dx = p.x - center.x, dy = p.y - center.y;
    if (dx * dx + dy * dy < best_d) {
      best_d = dx * dx + dy * dy;
      best = p;
    }
  }
  sc.start = best;
  sc.start.z = sc.height.h_init_m;

  if (kind == ScenarioKind::Uniform) {
    // Residual low-priority mass around the launch area. Cells stay below
    // the sparsity threshold, so they hold no targets but still pay small
    // first-visit tokens.
    const CellRect smear{std::max(0, start_cell.i - 4), std::max(0, start_cell.j - 4),
                         std::min(n - 1, start_cell.i + 4), std::min(n - 1, start_cell.j + 4)};
    int smear_cells = (smear.i1 - smear.i0 + 1) * (smear.j1 - smear.j0 + 1);
    int patch_cells = 0;
    for (const WeightedRegion& r : sc.belief.regions)
      patch_cells += (r.rect.i1 - r.rect.i0 + 1) * (r.rect.j1 - r.rect.j0 + 1);
    // Weight chosen so smear cells land at 80% of the default threshold.
    const double p_target = 0.8 / (static_cast<double>(n) * n);
    const double w = p_target * patch_cells / (1.0 - p_target * smear_cells);
    sc.belief.regions.push_back(WeightedRegion{smear, w});
  }
  return sc;
}

}  // namespace gridsar
