#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "gridsar/pomdp.hpp"

namespace gridsar {

struct BeliefNode;

/// Action node: running mean of backed-up returns plus observation-keyed
/// children, stored in creation order so traversals are reproducible.
struct ActionEdge {
  Action action;
  uint32_t visits = 0;
  double q = 0.0;
  std::vector<std::pair<Observation, std::unique_ptr<BeliefNode>>> children;

  BeliefNode* find_child(const Observation& o) const {
    for (const auto& [key, node] : children)
      if (key == o) return node.get();
    return nullptr;
  }
};

/// Belief node: visit count, the cell the agent occupies here, the root
/// belief's normalized probability at that cell, and a representative sampled
/// state from the first simulation that reached it.
struct BeliefNode {
  uint32_t id = 0;
  Cell cell;
  double p_here = 0.0;
  SimState rep_state;
  uint32_t visits = 0;
  bool expanded = false;
  std::vector<ActionEdge> edges;

  bool is_leaf() const { return !expanded; }
};

/// UCT selection: any unvisited edge wins first (in stored order), otherwise
/// argmax of Q + c * sqrt(ln N(b) / N(b,a)) with ties to the earlier edge.
/// Returns the edge index; throws std::domain_error when the node has no
/// edges.
size_t uct_select(const BeliefNode& b, double c_uct);

/// Attach one zeroed edge per legal action. Throws std::domain_error if the
/// node was already expanded. Zero legal actions is allowed; the node then
/// behaves as terminal.
void expand(BeliefNode& b, std::span<const Action> legal);

/// Child lookup/insertion keyed by observation. New children snapshot the
/// arriving state and read p_here from the invocation's root belief.
BeliefNode& child_for(ActionEdge& edge, const Observation& o, const SimState& arrived,
                      const BeliefMap& root_belief, uint32_t& next_id);

/// One backup: N(b) += 1, N(b,a) += 1, Q(b,a) += (q - Q) / N(b,a).
void update_stats(BeliefNode& b, ActionEdge& edge, double q);

/// Text dump, one node per line indented by depth, for offline inspection.
void dump_tree(const BeliefNode& root, std::ostream& os);

}  // namespace gridsar
