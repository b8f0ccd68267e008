#include "gridsar/mission.hpp"

#include <charconv>
#include <chrono>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gridsar/detail/text.hpp"

namespace gridsar {

std::string_view to_string(PlannerKind k) {
  switch (k) {
    case PlannerKind::Shrinking: return "shrinking";
    case PlannerKind::Vanilla: return "vanilla";
    case PlannerKind::Lawnmower: return "lawnmower";
    case PlannerKind::Greedy: return "greedy";
  }
  return "?";
}

PlannerKind planner_kind_from_string(std::string_view s) {
  if (s == "shrinking") return PlannerKind::Shrinking;
  if (s == "vanilla") return PlannerKind::Vanilla;
  if (s == "lawnmower") return PlannerKind::Lawnmower;
  if (s == "greedy") return PlannerKind::Greedy;
  throw std::invalid_argument("unknown planner: " + std::string(s));
}

std::string_view to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::AllFound: return "all_found";
    case TerminationReason::EpochCap: return "epoch_cap";
    case TerminationReason::BoxedIn: return "boxed_in";
  }
  return "?";
}

NavigateResult navigate(const FinePosition& current, const FinePosition& waypoint,
                        const WorldSlice& slice, AStarGrid& astar) {
  const MapGeometry& geom = slice.geom();
  const RasterPoint from = raster_of(current, geom);
  if (!slice.raster_valid(from)) throw std::domain_error("navigate: current position invalid");
  if (!geom.contains(waypoint.x, waypoint.y)) return {};
  const RasterPoint to = raster_of(waypoint, geom);
  if (!slice.raster_valid(to)) return {};  // invalid waypoint: unreachable, not a fault

  const auto path = astar.find_path(from, to);
  if (!path) return {};
  NavigateResult out;
  out.arrived = true;
  out.path.reserve(path->size());
  for (const RasterPoint& rp : *path)
    out.path.push_back(raster_position(rp, geom, slice.altitude()));
  out.length_m = (static_cast<double>(path->size()) - 1.0) * geom.raster_res_m;
  return out;
}

NavigateResult navigate(const FinePosition& current, const FinePosition& waypoint,
                        const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                        double altitude, const MapGeometry& geom) {
  const WorldSlice slice(geom, omap, zones, altitude);
  AStarGrid astar(slice);
  return navigate(current, waypoint, slice, astar);
}

std::vector<int> capture_check(Cell agent, std::span<const Cell> targets, uint32_t found_mask) {
  std::vector<int> out;
  for (size_t k = 0; k < targets.size(); ++k)
    if (!((found_mask >> k) & 1u) && targets[k] == agent) out.push_back(static_cast<int>(k));
  return out;
}

namespace {

// Slice + pathfinder bundle; rebuilt whenever altitude or zones change.
struct NavContext {
  WorldSlice slice;
  AStarGrid astar;
  NavContext(const MapGeometry& geom, const ObstacleMap& omap, std::span<const NoFlyZone> zones,
             double altitude)
      : slice(geom, omap, zones, altitude), astar(slice) {}
};

NoFlyZone cell_zone(Cell c, const MapGeometry& geom) {
  const double cs = geom.cell_size_m();
  return NoFlyZone{c.i * cs, c.j * cs, (c.i + 1) * cs - geom.raster_res_m * 0.5,
                   (c.j + 1) * cs - geom.raster_res_m * 0.5};
}

}  // namespace

EpisodeResult run_episode(const Scenario& sc, const EpisodeConfig& ec) {
  validate_scenario(sc);
  if (ec.max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");

  const MapGeometry& geom = sc.geom;
  World world = build_world(sc);
  BeliefMap belief = build_belief(sc);

  EpisodeResult res;
  res.target_cells = draw_targets(sc, world, belief, ec.seed);
  const size_t num_targets = res.target_cells.size();
  res.found_epoch.assign(num_targets, -1);
  uint32_t found_mask = 0;

  double altitude = sc.height.h_init_m;
  std::vector<NoFlyZone> zones = world.zones;  // dynamic designations appended
  auto nav = std::make_unique<NavContext>(geom, world.obstacles, zones, altitude);
  const auto rebuild_nav = [&] {
    world.zones = zones;
    nav = std::make_unique<NavContext>(geom, world.obstacles, zones, altitude);
  };

  Cell cur_cell = cell_of(sc.start, geom);
  FinePosition pos;
  if (!nav->slice.nearest_valid_in_cell(cur_cell, sc.start, pos))
    throw std::invalid_argument("start cell has no flyable position at h_init");
  res.trajectory.push_back(pos);

  CellSet ever_visited(geom.grid_n);
  ever_visited.insert(cur_cell);

  const auto mark_found = [&](std::span<const int> indices, int epoch) {
    for (int idx : indices) {
      found_mask |= uint32_t{1} << idx;
      res.found_epoch[idx] = epoch;
    }
  };
  const auto all_found = [&] {
    return num_targets > 0 && found_mask == ((uint32_t{1} << num_targets) - 1);
  };

  // Epoch-0 pre-check: whatever shares the start cell is captured on takeoff.
  const auto start_caps = capture_check(cur_cell, res.target_cells, found_mask);
  mark_found(start_caps, 0);
  belief = belief_visit_update(belief, cur_cell, !start_caps.empty(), ever_visited);

  Rng plan_rng(Rng::mix(ec.seed) ^ fnv1a64(sc.name.data(), sc.name.size()), kStreamPlanner);
  LawnmowerState mower;
  res.terminated_by = TerminationReason::EpochCap;

  const auto log_event = [&](const std::string& line) {
    if (ec.record_events) res.events.push_back(line);
  };

  while (!all_found() && res.epochs_used < ec.max_epochs) {
    // Boxed-in escalation: climb before giving up.
    while (legal_actions(cur_cell, nav->slice).empty() && altitude < sc.height.h_max_m) {
      altitude = std::min(altitude + sc.height.delta_h_m, sc.height.h_max_m);
      rebuild_nav();
    }
    if (legal_actions(cur_cell, nav->slice).empty()) {
      res.terminated_by = TerminationReason::BoxedIn;
      break;
    }

    res.epochs_used += 1;
    const int epoch = res.epochs_used;
    double epoch_len = 0.0;

    // One planner invocation = one decision epoch.
    SimState agent;
    agent.agent_cell = cur_cell;
    agent.agent_pos = pos;
    agent.targets.assign(num_targets - static_cast<size_t>(__builtin_popcount(found_mask)),
                         cur_cell);
    agent.visited = CellSet(geom.grid_n);
    agent.visited.insert(cur_cell);

    std::vector<Cell> waypoint_cells;
    const auto t0 = std::chrono::steady_clock::now();
    PlannerConfig cfg = sc.planner;
    std::unique_ptr<BeliefNode> tree;
    std::unique_ptr<BeliefNode>* tree_sink = ec.tree_dumps ? &tree : nullptr;
    switch (ec.planner) {
      case PlannerKind::Shrinking: {
        const PlanResult pr =
            plan(belief, agent, cfg, world, altitude, plan_rng, nullptr, tree_sink);
        Cell c = cur_cell;
        for (Action a : pr.actions) waypoint_cells.push_back(c = neighbor(c, a));
        break;
      }
      case PlannerKind::Vanilla: {
        const PlanResult pr =
            vanilla_pomcp_plan(belief, agent, cfg, world, altitude, plan_rng, nullptr, tree_sink);
        waypoint_cells.push_back(neighbor(cur_cell, pr.actions.front()));
        break;
      }
      case PlannerKind::Lawnmower:
        waypoint_cells.push_back(lawnmower_next(mower, cur_cell, belief, nav->slice));
        break;
      case PlannerKind::Greedy:
        waypoint_cells.push_back(greedy_next(cur_cell, belief, nav->slice));
        break;
    }
    res.planner_compute_ms +=
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ec.tree_dumps && tree) {
      std::ostringstream os;
      dump_tree(*tree, os);
      ec.tree_dumps->push_back(os.str());
    }

    for (Cell wp_cell : waypoint_cells) {
      const HeightDecision hd =
          adjust_height(wp_cell, altitude, sc.height, world.obstacles, zones, geom);
      if (hd.kind == HeightDecision::Kind::NoFlyReplan) {
        zones.push_back(cell_zone(wp_cell, geom));
        rebuild_nav();
        log_event("epoch=" + std::to_string(epoch) + " nofly_designated=(" +
                  std::to_string(wp_cell.i) + "," + std::to_string(wp_cell.j) + ")");
        break;  // drop the rest of the sequence, replan next epoch
      }
      if (hd.kind == HeightDecision::Kind::Raise) {
        altitude = hd.altitude;
        rebuild_nav();
        pos.z = altitude;
      }

      FinePosition waypoint;
      if (!nav->slice.nearest_valid_in_cell(wp_cell, pos, waypoint)) break;
      const NavigateResult leg = navigate(pos, waypoint, nav->slice, nav->astar);
      if (!leg.arrived) {
        log_event("epoch=" + std::to_string(epoch) + " unreachable=(" +
                  std::to_string(wp_cell.i) + "," + std::to_string(wp_cell.j) + ")");
        break;
      }
      for (size_t k = 1; k < leg.path.size(); ++k) res.trajectory.push_back(leg.path[k]);
      epoch_len += leg.length_m;
      pos = waypoint;
      cur_cell = wp_cell;
      ever_visited.insert(cur_cell);

      const auto caps = capture_check(cur_cell, res.target_cells, found_mask);
      mark_found(caps, epoch);
      belief = belief_visit_update(belief, cur_cell, !caps.empty(), ever_visited);
      log_event("epoch=" + std::to_string(epoch) + " arrived=(" + std::to_string(wp_cell.i) +
                "," + std::to_string(wp_cell.j) + ") captured=" + std::to_string(caps.size()));
      if (all_found()) break;
    }

    res.path_length_m += epoch_len;
    res.wall_ms_per_epoch.push_back(epoch_len / sc.speed_mps * 1000.0);
  }

  if (all_found()) res.terminated_by = TerminationReason::AllFound;
  res.targets_found = __builtin_popcount(found_mask);
  res.sim_time_s = res.path_length_m / sc.speed_mps;
  return res;
}

std::string serialize_record(const EpisodeResult& r, const Scenario& sc,
                             const EpisodeConfig& ec) {
  std::string out;
  out += "# gridsar episode record v1\n";
  out += detail::kv("scenario.name", sc.name);
  out += detail::kv("config.planner", std::string(to_string(ec.planner)));
  out += detail::kv("config.seed", std::to_string(ec.seed));
  out += detail::kv("config.max_epochs", std::to_string(ec.max_epochs));
  out += detail::kv("config.speed_mps", detail::fmt(sc.speed_mps));
  out += detail::planner_block("config.planner_cfg.", sc.planner, sc.geom.grid_n,
                               sc.geom.cell_size_m());
  out += detail::height_block("config.height.", sc.height);
  out += detail::kv("result.epochs_used", std::to_string(r.epochs_used));
  out += detail::kv("result.targets_found", std::to_string(r.targets_found));
  out += detail::kv("result.path_length_m", detail::fmt(r.path_length_m));
  out += detail::kv("result.sim_time_s", detail::fmt(r.sim_time_s));
  out += detail::kv("result.terminated_by", std::string(to_string(r.terminated_by)));
  {
    std::string line = "result.wall_ms_per_epoch";
    for (double v : r.wall_ms_per_epoch) line += " " + detail::fmt(v);
    out += line + "\n";
  }
  for (size_t k = 0; k < r.target_cells.size(); ++k)
    out += "target.cell " + std::to_string(r.target_cells[k].i) + " " +
           std::to_string(r.target_cells[k].j) + " found_epoch " +
           std::to_string(r.found_epoch[k]) + "\n";
  for (const FinePosition& p : r.trajectory)
    out += "traj.point " + detail::fmt(p.x) + " " + detail::fmt(p.y) + " " + detail::fmt(p.z) +
           "\n";
  for (const std::string& e : r.events) out += "event " + e + "\n";
  return out;
}

ParsedRecord parse_record(const std::string& text) {
  ParsedRecord rec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "scenario.name") {
      ls >> rec.scenario_name;
    } else if (key == "config.planner") {
      ls >> rec.planner;
    } else if (key == "config.seed") {
      ls >> rec.seed;
    } else if (key == "result.epochs_used") {
      ls >> rec.result.epochs_used;
    } else if (key == "result.targets_found") {
      ls >> rec.result.targets_found;
    } else if (key == "result.path_length_m") {
      ls >> rec.result.path_length_m;
    } else if (key == "result.sim_time_s") {
      ls >> rec.result.sim_time_s;
    } else if (key == "result.terminated_by") {
      std::string v;
      ls >> v;
      rec.result.terminated_by = v == "all_found"  ? TerminationReason::AllFound
                                 : v == "boxed_in" ? TerminationReason::BoxedIn
                                                   : TerminationReason::EpochCap;
    } else if (key == "result.wall_ms_per_epoch") {
      double v;
      while (ls >> v) rec.result.wall_ms_per_epoch.push_back(v);
    } else if (key == "target.cell") {
      Cell c;
      std::string tag;
      int ep;
      ls >> c.i >> c.j >> tag >> ep;
      rec.result.target_cells.push_back(c);
      rec.result.found_epoch.push_back(ep);
    } else if (key == "traj.point") {
      FinePosition p;
      ls >> p.x >> p.y >> p.z;
      rec.result.trajectory.push_back(p);
    } else if (key == "event") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
      rec.result.events.push_back(rest);
    }
    // unknown keys ignored: records are forward-compatible
  }
  return rec;
}

}  // namespace gridsar
