#include "gridsar/planner.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridsar {

void PlannerConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (max_level < 1) throw std::invalid_argument("max_level must be >= 1");
  if (p_epsilon && (*p_epsilon < 0.0 || *p_epsilon > 1.0))
    throw std::invalid_argument("p_epsilon must lie in [0, 1]");
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (max_time_ms < 0.0) throw std::invalid_argument("max_time_ms must be >= 0");
  if (rollout.sample_count < 1) throw std::invalid_argument("rollout samples must be >= 1");
}

void HeightConfig::validate() const {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (delta_h_m <= 0.0) throw std::invalid_argument("delta_h must be positive");
  if (h_init_m > h_max_m) throw std::invalid_argument("h_init must not exceed h_max");
}

PlanContext::PlanContext(const BeliefMap& belief, const World& world, double altitude,
                         const PlannerConfig& cfg)
    : cfg_(cfg),
      slice_(world.geom, world.obstacles, world.zones, altitude),
      astar_(slice_),
      rp_{cfg.alpha, belief},
      cdf_(belief),
      p_eps_(cfg.resolved_p_epsilon(world.geom.grid_n)),
      rollout_dest_(belief.argmax()) {
  cfg_.validate();
  if (!cdf_.valid()) {
    // All-zero sentinel belief: fall back to a uniform draw so planning can
    // still propose motion.
    BeliefMap uni(belief.grid_n());
    const double v = 1.0 / (static_cast<double>(belief.grid_n()) * belief.grid_n());
    for (double& p : uni.data()) p = v;
    cdf_ = BeliefCdf(uni);
    rollout_dest_ = uni.argmax();
  }
}

SimState PlanContext::sample_root_state(const SimState& agent_template, Rng& rng) const {
  SimState s = agent_template;
  for (size_t k = 0; k < s.targets.size(); ++k)
    if (!s.found(k)) s.targets[k] = cdf_.sample(rng);
  return s;
}

double simulate_v(SimState& s, BeliefNode& b, int depth, PlanContext& ctx, Rng& rng,
                  uint32_t& next_id, std::vector<PlanTrace::Update>* log) {
  const PlannerConfig& cfg = ctx.config();
  if (s.all_found() || depth > cfg.max_depth) return 0.0;

  if (b.is_leaf()) {
    const auto legal = legal_actions(s.agent_cell, ctx.slice());
    expand(b, legal);
    b.visits += 1;  // expansion visit, carries no edge update
    return rollout_value(s, ctx.rollout_destination(), ctx.reward_params(), cfg.rollout,
                         cfg.gamma, ctx.astar(), rng);
  }
  if (b.edges.empty()) return 0.0;  // expanded but boxed in: terminal

  const size_t idx = uct_select(b, cfg.c_uct);
  ActionEdge& edge = b.edges[idx];
  const StepOutcome step = step_generative_inplace(s, edge.action, ctx.reward_params(),
                                                   ctx.slice(), rng);
  BeliefNode& child = child_for(edge, step.obs, s, ctx.root_belief(), next_id);
  const double q =
      step.reward + cfg.gamma * simulate_v(s, child, depth + 1, ctx, rng, next_id, log);
  update_stats(b, edge, q);
  if (log) log->push_back(PlanTrace::Update{b.id, edge.action, q});
  return q;
}

BuiltTree build_tree(const BeliefMap& belief, const SimState& agent_template,
                     const PlannerConfig& cfg, const World& world, double altitude, Rng& rng,
                     PlanTrace* trace) {
  PlanContext ctx(belief, world, altitude, cfg);

  auto root = std::make_unique<BeliefNode>();
  uint32_t next_id = 0;
  root->id = next_id++;
  root->cell = agent_template.agent_cell;
  root->p_here = belief.at(agent_template.agent_cell);
  root->rep_state = agent_template;

  const auto legal = legal_actions(agent_template.agent_cell, ctx.slice());
  if (legal.empty()) throw std::domain_error("agent is boxed in: no legal action at root");
  expand(*root, legal);

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  int iterations = 0;
  while (iterations < cfg.max_iterations &&
         (cfg.max_time_ms <= 0.0 || elapsed_ms() < cfg.max_time_ms)) {
    SimState s = ctx.sample_root_state(agent_template, rng);
    std::vector<PlanTrace::Update>* log = nullptr;
    if (trace) {
      trace->simulations.emplace_back();
      log = &trace->simulations.back();
    }
    simulate_v(s, *root, 0, ctx, rng, next_id, log);
    ++iterations;
  }

  PlanStats stats;
  stats.iterations = iterations;
  stats.elapsed_ms = elapsed_ms();
  stats.root_visits = root->visits;
  for (const ActionEdge& e : root->edges)
    stats.root_edges.push_back(RootEdgeStat{e.action, e.visits, e.q});
  return BuiltTree{std::move(root), std::move(stats)};
}

bool is_non_sparse(const BeliefNode& node, double p_epsilon) { return node.p_here > p_epsilon; }

namespace {

// Argmax-Q over visited edges, ties to the earlier edge. -1 when none visited.
int best_edge_index(const BeliefNode& node) {
  int best = -1;
  for (size_t k = 0; k < node.edges.size(); ++k) {
    const ActionEdge& e = node.edges[k];
    if (e.visits == 0) continue;
    if (best < 0 || e.q > node.edges[best].q) best = static_cast<int>(k);
  }
  return best;
}

const BeliefNode* most_visited_child(const ActionEdge& edge) {
  const BeliefNode* best = nullptr;
  for (const auto& [obs, child] : edge.children)
    if (!best || child->visits > best->visits) best = child.get();
  return best;
}

}  // namespace

std::vector<Action> get_action_sequence(const BeliefNode& root, int max_level, double p_epsilon) {
  if (root.edges.empty()) throw std::domain_error("action extraction on root without edges");
  std::vector<Action> seq;
  const BeliefNode* node = &root;
  while (true) {
    int idx = best_edge_index(*node);
    // A root built with a single iteration has edges but no backed-up visits
    // yet; emit its first edge so the mission never stalls on an empty plan.
    if (idx < 0 && seq.empty()) idx = 0;
    if (idx < 0) break;
    const ActionEdge& edge = node->edges[idx];
    seq.push_back(edge.action);
    if (static_cast<int>(seq.size()) >= max_level) break;
    const BeliefNode* child = most_visited_child(edge);
    if (!child) break;
    if (is_non_sparse(*child, p_epsilon)) break;
    if (child->edges.empty()) break;
    node = child;
  }
  if (seq.empty()) throw std::domain_error("action extraction produced no action");
  return seq;
}

PlanResult plan(const BeliefMap& belief, const SimState& agent_template, const PlannerConfig& cfg,
                const World& world, double altitude, Rng& rng, PlanTrace* trace,
                std::unique_ptr<BeliefNode>* tree_out) {
  BuiltTree built = build_tree(belief, agent_template, cfg, world, altitude, rng, trace);
  PlanResult result;
  result.actions = get_action_sequence(*built.root, cfg.max_level,
                                       cfg.resolved_p_epsilon(world.geom.grid_n));
  result.stats = std::move(built.stats);
  if (tree_out) *tree_out = std::move(built.root);
  return result;
}

HeightDecision adjust_height(Cell cell, double altitude, const HeightConfig& hc,
                             const ObstacleMap& omap, std::span<const NoFlyZone> zones,
                             const MapGeometry& geom) {
  hc.validate();
  if (valid_count(cell, altitude, omap, zones, geom) >= hc.tau)
    return HeightDecision{HeightDecision::Kind::Keep, altitude};
  double h = altitude;
  while (h < hc.h_max_m) {
    h = std::min(h + hc.delta_h_m, hc.h_max_m);
    if (valid_count(cell, h, omap, zones, geom) >= hc.tau)
      return HeightDecision{HeightDecision::Kind::Raise, h};
  }
  return HeightDecision{HeightDecision::Kind::NoFlyReplan, hc.h_max_m};
}

}  // namespace gridsar
