#include "freezetag/graphs.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "freezetag/errors.hpp"

namespace freezetag::graphs {

namespace {

using Slot = TreeBuilder::Slot;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::map<int, double>> adjacency(const GraphData& graph) {
  std::vector<std::map<int, double>> adj(graph.vertices);
  for (const auto& e : graph.edges) {
    if (e.u == e.v) continue;
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      auto [it, fresh] = adj[a].try_emplace(b, e.weight);
      if (!fresh) it->second = std::min(it->second, e.weight);
    }
  }
  return adj;
}

// Site index of every vertex (-1 for vertices without robots).
std::vector<SiteId> vertex_sites(const Instance& inst) {
  std::vector<SiteId> site(inst.graph_data().vertices, -1);
  for (SiteId s = 0; s < static_cast<SiteId>(inst.site_count()); ++s) site[inst.site_label(s)] = s;
  return site;
}

std::vector<RobotId> robots_of_site(const Instance& inst, SiteId s, bool skip_first) {
  std::vector<RobotId> out;
  for (int k = skip_first ? 1 : 0; k < inst.robots_at_site(s); ++k) out.push_back(inst.first_robot_at(s) + k);
  return out;
}

void require_graph(const Instance& inst, const char* who) {
  if (inst.kind() != InstanceKind::Graph) throw PreconditionError(std::string(who) + " needs a graph instance");
}

}  // namespace

GraphStats graph_stats(const GraphData& graph) {
  const auto adj = adjacency(graph);
  GraphStats stats;
  stats.degree.resize(graph.vertices);
  stats.local_ratio.assign(graph.vertices, 1.0);
  for (int v = 0; v < graph.vertices; ++v) {
    stats.degree[v] = static_cast<int>(adj[v].size());
    if (!adj[v].empty()) {
      double lo = kInf, hi = 0.0;
      for (const auto& [u, w] : adj[v]) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      stats.local_ratio[v] = lo > 0.0 ? hi / lo : kInf;
    }
    stats.rho_max = std::max(stats.rho_max, stats.local_ratio[v]);
    const int r = graph.robots[v];
    if (r <= 0) continue;
    const double term = v == graph.source ? static_cast<double>(stats.degree[v]) / r
                                          : static_cast<double>(stats.degree[v] - 2) / r;
    stats.delta = std::max(stats.delta, term);
  }
  return stats;
}

std::vector<int> bfs_deficient_vertices(const GraphData& graph) {
  const auto adj = adjacency(graph);
  std::vector<int> out;
  for (int v = 0; v < graph.vertices; ++v) {
    const int deg = static_cast<int>(adj[v].size());
    const bool ok = v == graph.source ? graph.robots[v] >= deg : graph.robots[v] >= deg - 2;
    if (!ok) out.push_back(v);
  }
  return out;
}

WakeUpTree bfs_wakeup(const Instance& inst) {
  require_graph(inst, "bfs_wakeup");
  const auto& g = inst.graph_data();
  if (auto bad = bfs_deficient_vertices(g); !bad.empty()) {
    std::string list;
    for (int v : bad) list += (list.empty() ? "" : ", ") + std::to_string(v);
    throw PreconditionError("bfs_wakeup: too few robots at vertices " + list);
  }
  const auto adj = adjacency(g);

  // Dijkstra; equal distances keep the smaller predecessor.
  std::vector<double> dist(g.vertices, kInf);
  std::vector<int> pred(g.vertices, -1);
  std::vector<char> done(g.vertices, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[g.source] = 0.0;
  heap.push({0.0, g.source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (const auto& [u, w] : adj[v]) {
      const double nd = d + w;
      if (nd < dist[u] || (nd == dist[u] && !done[u] && v < pred[u])) {
        const bool improved = nd < dist[u];
        dist[u] = nd;
        pred[u] = v;
        if (improved) heap.push({nd, u});
      }
    }
  }
  std::vector<std::vector<int>> kids(g.vertices);
  for (int v = 0; v < g.vertices; ++v)
    if (pred[v] >= 0) kids[pred[v]].push_back(v);

  // Skip branches that hold no robot.
  std::vector<char> needed(g.vertices, 0);
  {
    std::vector<int> order{g.source};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int c : kids[order[i]]) order.push_back(c);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      needed[*it] = g.robots[*it] > 0;
      for (int c : kids[*it]) needed[*it] = needed[*it] || needed[c];
    }
  }

  const auto site = vertex_sites(inst);
  TreeBuilder builder(inst);
  std::vector<std::pair<Slot, int>> stack;
  {
    auto slots = builder.cascade_here(builder.root_slot(), robots_of_site(inst, 0, true));
    std::size_t k = 0;
    for (int c : kids[g.source])
      if (needed[c]) stack.emplace_back(slots.at(k++), c);
  }
  while (!stack.empty()) {
    auto [slot, v] = stack.back();
    stack.pop_back();
    std::vector<Slot> slots{slot};
    if (site[v] >= 0) slots = builder.claim_site(slot, robots_of_site(inst, site[v], false));
    std::size_t k = 0;
    for (int c : kids[v])
      if (needed[c]) stack.emplace_back(slots.at(k++), c);
  }
  return builder.take();
}

OnlineView::OnlineView(const GraphData& graph, bool strict)
    : adjacency_(adjacency(graph)), visited_(graph.vertices, 0), strict_(strict) {}

void OnlineView::visit(int vertex) { visited_[vertex] = 1; }

void OnlineView::touch(int vertex) {
  if (visited_[vertex]) return;
  ++out_of_view_;
  if (strict_) throw Error("online view: vertex " + std::to_string(vertex) + " has not been visited");
}

std::vector<std::pair<int, double>> OnlineView::neighbors(int vertex) {
  touch(vertex);
  std::vector<std::pair<int, double>> out(adjacency_[vertex].begin(), adjacency_[vertex].end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

double OnlineView::weight(int from, int to) {
  touch(from);
  return adjacency_[from].at(to);
}

WakeUpTree online_cascade(const Instance& inst, OnlineStats* stats, bool strict_view) {
  require_graph(inst, "online_cascade");
  const auto& g = inst.graph_data();
  const auto site = vertex_sites(inst);
  OnlineView view(g, strict_view);
  TreeBuilder builder(inst);

  struct Agent {
    double time;
    RobotId robot;
    int vertex;
    Slot slot;
    bool operator>(const Agent& o) const { return time != o.time ? time > o.time : robot > o.robot; }
  };
  std::priority_queue<Agent, std::vector<Agent>, std::greater<>> agents;

  std::vector<char> claimed(g.vertices, 0);  // visited or targeted by some robot
  std::vector<std::vector<int>> pending(g.vertices);
  std::vector<std::size_t> cursor(g.vertices, 0);
  std::vector<int> came_from(g.vertices, -1);
  std::size_t visited = 0;

  auto arrive = [&](int v, double t, const Slot& slot) {
    view.visit(v);
    ++visited;
    for (const auto& [u, w] : view.neighbors(v))
      if (!claimed[u]) pending[v].push_back(u);
    std::vector<Slot> slots{slot};
    if (site[v] >= 0) {
      const bool source = v == g.source;
      auto robots = robots_of_site(inst, site[v], source);
      slots = source ? builder.cascade_here(slot, robots) : builder.claim_site(slot, robots);
    }
    for (const auto& s : slots) agents.push({t, s.robot, v, s});
  };

  claimed[g.source] = 1;
  arrive(g.source, 0.0, builder.root_slot());
  while (!agents.empty()) {
    const Agent a = agents.top();
    agents.pop();
    auto& list = pending[a.vertex];
    while (cursor[a.vertex] < list.size() && claimed[list[cursor[a.vertex]]]) ++cursor[a.vertex];
    if (cursor[a.vertex] < list.size()) {
      const int u = list[cursor[a.vertex]++];
      claimed[u] = 1;
      came_from[u] = a.vertex;
      arrive(u, a.time + view.weight(a.vertex, u), a.slot);
      continue;
    }
    const int up = came_from[a.vertex];
    if (up < 0) continue;  // at the source with nothing left to claim: rest
    agents.push({a.time + view.weight(a.vertex, up), a.robot, up, a.slot});
  }

  if (!builder.complete()) throw Error("online_cascade left robots asleep");
  if (stats) {
    stats->out_of_view_queries = view.out_of_view_queries();
    stats->vertices_visited = visited;
  }
  return builder.take();
}

Instance adversary_family(int k, double epsilon, int heavy_neighbor) {
  if (k < 2) throw ParameterError("adversary_family: k must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("adversary_family: epsilon must lie in (0, 1)");
  if (heavy_neighbor < 0 || heavy_neighbor >= k)
    throw ParameterError("adversary_family: heavy neighbor index must lie in [0, k)");
  GraphData g;
  g.vertices = k + 2;
  g.source = 0;
  g.robots.assign(g.vertices, 1);
  g.robots[k + 1] = k;
  for (int i = 1; i <= k; ++i) g.edges.push_back({0, i, 1.0});
  g.edges.push_back({heavy_neighbor + 1, k + 1, epsilon});
  return Instance::graph(std::move(g));
}

}  // namespace freezetag::graphs
