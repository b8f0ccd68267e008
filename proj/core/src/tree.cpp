#include "gridsar/tree.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gridsar {

size_t uct_select(const BeliefNode& b, double c_uct) {
  if (b.edges.empty()) throw std::domain_error("uct_select on node without edges");
  for (size_t k = 0; k < b.edges.size(); ++k)
    if (b.edges[k].visits == 0) return k;

  const double log_n = std::log(static_cast<double>(b.visits));
  size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < b.edges.size(); ++k) {
    const ActionEdge& e = b.edges[k];
    const double score = e.q + c_uct * std::sqrt(log_n / e.visits);
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

void expand(BeliefNode& b, std::span<const Action> legal) {
  if (b.expanded) throw std::domain_error("expand on non-leaf node");
  b.expanded = true;
  b.edges.reserve(legal.size());
  for (Action a : legal) b.edges.push_back(ActionEdge{a, 0, 0.0, {}});
}

BeliefNode& child_for(ActionEdge& edge, const Observation& o, const SimState& arrived,
                      const BeliefMap& root_belief, uint32_t& next_id) {
  if (BeliefNode* existing = edge.find_child(o)) return *existing;
  auto node = std::make_unique<BeliefNode>();
  node->id = next_id++;
  node->cell = arrived.agent_cell;
  node->p_here = root_belief.at(arrived.agent_cell);
  node->rep_state = arrived;
  BeliefNode& ref = *node;
  edge.children.emplace_back(o, std::move(node));
  return ref;
}

void update_stats(BeliefNode& b, ActionEdge& edge, double q) {
  b.visits += 1;
  edge.visits += 1;
  edge.q += (q - edge.q) / edge.visits;
}

namespace {

void dump_rec(const BeliefNode& node, std::ostream& os, int depth) {
  for (int k = 0; k < depth; ++k) os << "  ";
  os << "b id=" << node.id << " N=" << node.visits << " P=" << node.p_here << " cell=("
     << node.cell.i << "," << node.cell.j << ")\n";
  for (const ActionEdge& e : node.edges) {
    for (int k = 0; k < depth + 1; ++k) os << "  ";
    os << "a=" << to_string(e.action) << " N=" << e.visits << " Q=" << e.q << "\n";
    for (const auto& [obs, child] : e.children) {
      for (int k = 0; k < depth + 2; ++k) os << "  ";
      os << "o=(" << obs.cell.i << "," << obs.cell.j << "|" << obs.captured << ")\n";
      dump_rec(*child, os, depth + 3);
    }
  }
}

}  // namespace

void dump_tree(const BeliefNode& root, std::ostream& os) { dump_rec(root, os, 0); }

}  // namespace gridsar
