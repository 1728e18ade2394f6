#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag::graphs {

struct GraphStats {
  std::vector<int> degree;        // distinct neighbors per vertex
  std::vector<double> local_ratio;  // max / min incident weight (1 for isolated vertices)
  double delta = 0.0;             // Delta_G over occupied vertices
  double rho_max = 1.0;
};

// Degree statistics; Delta_G = max{deg(v0)/r(v0), (deg(v)-2)/r(v)} over occupied v.
GraphStats graph_stats(const GraphData& graph);

// Vertices that violate r(v0) >= deg(v0) or r(v) >= deg(v) - 2.
std::vector<int> bfs_deficient_vertices(const GraphData& graph);

// Wakes robots along a shortest-path tree from the source. Optimal when no
// vertex is deficient; throws PreconditionError listing them otherwise.
WakeUpTree bfs_wakeup(const Instance& graph);

/// What an online robot may see: visited vertices and their incident edges.
/// Every query about an unvisited vertex is counted (or rejected when strict).
class OnlineView {
 public:
  OnlineView(const GraphData& graph, bool strict);

  void visit(int vertex);
  bool visited(int vertex) const { return visited_[vertex] != 0; }
  // Neighbors of a vertex with the lightest connecting weight, ascending by (weight, id).
  std::vector<std::pair<int, double>> neighbors(int vertex);
  double weight(int from, int to);

  std::uint64_t out_of_view_queries() const { return out_of_view_; }

 private:
  void touch(int vertex);

  std::vector<std::map<int, double>> adjacency_;
  std::vector<char> visited_;
  bool strict_;
  std::uint64_t out_of_view_ = 0;
};

struct OnlineStats {
  std::uint64_t out_of_view_queries = 0;
  std::size_t vertices_visited = 0;
};

/// Online cascade. Robots standing at a visited vertex take its asleep
/// neighbors one at a time in (weight, id) order, so the available robots
/// double after every wake (a binary cascade). A robot whose vertex has no
/// asleep neighbor left walks back along the exploration tree until it finds
/// one; at the source it rests. Only the OnlineView is consulted.
WakeUpTree online_cascade(const Instance& graph, OnlineStats* stats = nullptr, bool strict_view = false);

/// Constant in online/optimum <= C_online * (1 + log2(1 + Delta_G)), measured
/// on the acceptance suite (see README).
inline constexpr double kOnlineConstant = 1.0;

// Lower-bound instance: the source has k unit neighbors with one robot each;
// neighbor `heavy_neighbor` (0-based, in id order) also reaches a vertex with
// k robots through an edge of length epsilon. Vertex ids: 0 source, 1..k
// neighbors, k+1 the populous vertex.
Instance adversary_family(int k, double epsilon, int heavy_neighbor);

// The placement the online cascade reaches last (the highest-id neighbor).
inline int worst_adversary_placement(int k) { return k - 1; }

}  // namespace freezetag::graphs
