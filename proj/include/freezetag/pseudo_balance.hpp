#pragma once

#include <vector>

#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag {

struct HeavyPathDecomposition {
  // heavy_child[v] is the child with the largest subtree (ties: smaller id), or kNoRobot.
  std::vector<RobotId> heavy_child;
  // subtree_size[v] counts v and all its descendants.
  std::vector<int> subtree_size;
  // Heavy paths listed head first; the root's path comes first.
  std::vector<std::vector<RobotId>> paths;
  // path_of[v] indexes `paths`.
  std::vector<int> path_of;
  // Edges (parent, child) that are not heavy.
  std::vector<std::pair<RobotId, RobotId>> light_edges;
};

// Only requires a rooted spanning tree; degree bounds are not checked.
HeavyPathDecomposition heavy_path_decomposition(const WakeUpTree& tree);

// Largest number of light edges on a root-to-leaf path.
int max_light_edges_on_path(const WakeUpTree& tree, const HeavyPathDecomposition& hpd);

/// Constant in the node-count bound C_pb * (1 + 1/mu) * (log2 n)^2 met by
/// pseudo_balance. Measured on the fuzz suite; see README.
inline constexpr double kPseudoBalanceConstant = 2.0;

// C_pb * (1 + 1/mu) * (log2 n)^2.
double pseudo_balance_node_bound(std::size_t robots, double mu);

/// Rebuilds `tree` so that every root-to-leaf path has O((1 + 1/mu) log^2 n)
/// nodes while the makespan grows by at most a factor (1 + mu).
///
/// Each heavy path is cut into windows of arc length xi; window heads are
/// chained directly (no delay), and the nodes of a window are woken by a
/// median-split binary cascade started from the head. Light subtrees are
/// re-attached to free slots of their window. A tree that already has at
/// most C_pb * (log2 n)^2 nodes on every path is returned unchanged.
WakeUpTree pseudo_balance(const Instance& instance, const WakeUpTree& tree, double mu);

}  // namespace freezetag
