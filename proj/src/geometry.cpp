#include "freezetag/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <string>

#include "freezetag/errors.hpp"

namespace freezetag::geometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Slot = TreeBuilder::Slot;

void check_planar(const std::vector<Point>& points) {
  for (const auto& p : points)
    if (p.size() != 2) throw PreconditionError("geometry algorithms need planar (2-D) points");
}

void check_K(int K) {
  if (K < 1) throw ParameterError("Theta-graph needs K >= 1 sectors");
}

// Offers point i as the sector-j neighbor candidate; keeps the nearest, ties to the smaller index.
void offer(std::vector<int>& best, std::vector<double>& best_d, int j, int i, double d) {
  if (d < best_d[j] || (d == best_d[j] && i < best[j])) {
    best_d[j] = d;
    best[j] = i;
  }
}

class KdTree {
 public:
  KdTree(const std::vector<Point>& points, Metric metric) : points_(points), metric_(metric) {
    order_.resize(points.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    if (!order_.empty()) build(0, static_cast<int>(order_.size()), 0);
  }

  // Sector-nearest neighbors of point v.
  std::vector<int> sector_neighbors(int v, int K) const {
    std::vector<int> best(K, -1);
    std::vector<double> best_d(K, kInf);
    if (!nodes_.empty()) search(0, v, K, best, best_d);
    return best;
  }

 private:
  struct Node {
    int lo, hi;          // range in order_
    int left = -1, right = -1;
    double box[2][2];    // [axis][min,max]
  };

  int build(int lo, int hi, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, hi, -1, -1, {{kInf, -kInf}, {kInf, -kInf}}});
    for (int k = lo; k < hi; ++k)
      for (int a = 0; a < 2; ++a) {
        nodes_[id].box[a][0] = std::min(nodes_[id].box[a][0], points_[order_[k]][a]);
        nodes_[id].box[a][1] = std::max(nodes_[id].box[a][1], points_[order_[k]][a]);
      }
    if (hi - lo <= 8) return id;
    const int axis = depth % 2;
    const int mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                     [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });
    const int left = build(lo, mid, depth + 1);
    const int right = build(mid, hi, depth + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  double box_distance(const Node& node, const Point& p) const {
    Point gap(2, 0.0);
    for (int a = 0; a < 2; ++a) gap[a] = std::max({0.0, node.box[a][0] - p[a], p[a] - node.box[a][1]});
    return point_distance(Point{0.0, 0.0}, gap, metric_);
  }

  void search(int id, int v, int K, std::vector<int>& best, std::vector<double>& best_d) const {
    const Node& node = nodes_[id];
    const double worst = *std::max_element(best_d.begin(), best_d.end());
    if (box_distance(node, points_[v]) > worst * (1.0 + 1e-12)) return;
    if (node.left < 0) {
      for (int k = node.lo; k < node.hi; ++k) {
        const int i = order_[k];
        if (i == v) continue;
        const double d = point_distance(points_[v], points_[i], metric_);
        if (d == 0.0) continue;
        offer(best, best_d, sector_of(points_[v], points_[i], K), i, d);
      }
      return;
    }
    const double dl = box_distance(nodes_[node.left], points_[v]);
    const double dr = box_distance(nodes_[node.right], points_[v]);
    if (dl <= dr) {
      search(node.left, v, K, best, best_d);
      search(node.right, v, K, best, best_d);
    } else {
      search(node.right, v, K, best, best_d);
      search(node.left, v, K, best, best_d);
    }
  }

  const std::vector<Point>& points_;
  Metric metric_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

// Distinct locations: sites sharing coordinates are merged (the Theta-graph ignores distance 0).
struct Locations {
  std::vector<Point> coords;
  std::vector<std::vector<SiteId>> sites;  // sites at each location, ascending
  std::vector<int> of_site;
};

Locations group_locations(const Instance& inst, const std::vector<SiteId>& subset) {
  Locations loc;
  loc.of_site.assign(inst.site_count(), -1);
  std::map<Point, int> index;
  for (SiteId s : subset) {
    const Point& p = inst.coordinates(inst.first_robot_at(s));
    auto [it, fresh] = index.try_emplace(p, static_cast<int>(loc.coords.size()));
    if (fresh) {
      loc.coords.push_back(p);
      loc.sites.emplace_back();
    }
    loc.sites[it->second].push_back(s);
    loc.of_site[s] = it->second;
  }
  return loc;
}

std::vector<RobotId> robots_at_location(const Instance& inst, const Locations& loc, int l, RobotId skip) {
  std::vector<RobotId> out;
  for (SiteId s : loc.sites[l])
    for (int k = 0; k < inst.robots_at_site(s); ++k)
      if (inst.first_robot_at(s) + k != skip) out.push_back(inst.first_robot_at(s) + k);
  return out;
}

/// Event-driven Theta-graph walk over one set of locations. Returns the slot
/// every participating robot ends in.
class ThetaWalk {
 public:
  ThetaWalk(const Instance& inst, TreeBuilder& builder, const Locations& loc, int K)
      : inst_(inst), builder_(builder), loc_(loc), claimed_(loc.coords.size(), 0) {
    const auto theta = build_theta_graph(loc.coords, K, inst.points_data().metric);
    lists_.resize(loc.coords.size());
    for (int v = 0; v < static_cast<int>(loc.coords.size()); ++v)
      lists_[v] = theta.sorted_neighbors(loc.coords, v, inst.points_data().metric);
  }

  void mark_claimed(int location) { claimed_[location] = 1; }
  bool all_claimed() const {
    return std::all_of(claimed_.begin(), claimed_.end(), [](char c) { return c != 0; });
  }

  std::vector<Slot> run(const std::vector<Slot>& start, int location) {
    std::priority_queue<Agent, std::vector<Agent>, std::greater<>> queue;
    for (const auto& s : start) queue.push({s.time, s.robot, location, 0, s});
    std::vector<Slot> finished;
    while (!queue.empty()) {
      Agent a = queue.top();
      queue.pop();
      const auto& list = lists_[a.owner];
      while (a.next < list.size() && claimed_[list[a.next]]) ++a.next;
      if (a.next == list.size()) {
        finished.push_back(a.slot);
        continue;
      }
      const int target = list[a.next++];
      claimed_[target] = 1;
      const auto robots = robots_at_location(inst_, loc_, target, kNoRobot);
      for (const auto& s : builder_.claim_site(a.slot, robots)) {
        if (s.robot == a.robot) queue.push({s.time, s.robot, a.owner, a.next, s});
        else queue.push({s.time, s.robot, target, 0, s});
      }
    }
    return finished;
  }

 private:
  struct Agent {
    double time;
    RobotId robot;
    int owner;          // location whose neighbor list this robot walks
    std::size_t next;   // position in that list
    Slot slot;
    bool operator>(const Agent& o) const { return time != o.time ? time > o.time : robot > o.robot; }
  };

  const Instance& inst_;
  TreeBuilder& builder_;
  const Locations& loc_;
  std::vector<std::vector<int>> lists_;
  std::vector<char> claimed_;
};

void require_points(const Instance& inst, const char* who) {
  if (inst.kind() != InstanceKind::Points) throw PreconditionError(std::string(who) + " needs a points instance");
  check_planar(inst.points_data().points);
}

std::vector<SiteId> all_sites(const Instance& inst) {
  std::vector<SiteId> out(inst.site_count());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = static_cast<SiteId>(s);
  return out;
}

}  // namespace

int sector_of(const Point& from, const Point& to, int K) {
  double angle = std::atan2(to[1] - from[1], to[0] - from[0]);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const int j = static_cast<int>(std::floor(angle / (2.0 * std::numbers::pi / K)));
  return std::clamp(j, 0, K - 1);
}

std::vector<int> ThetaGraph::sorted_neighbors(const std::vector<Point>& points, int v, Metric metric) const {
  std::vector<int> out;
  for (int u : neighbor[v])
    if (u >= 0 && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    const double da = point_distance(points[v], points[a], metric);
    const double db = point_distance(points[v], points[b], metric);
    return da != db ? da < db : a < b;
  });
  return out;
}

ThetaGraph build_theta_graph(const std::vector<Point>& points, int K, Metric metric) {
  check_K(K);
  check_planar(points);
  KdTree tree(points, metric);
  ThetaGraph g;
  g.K = K;
  g.neighbor.resize(points.size());
  for (std::size_t v = 0; v < points.size(); ++v) g.neighbor[v] = tree.sector_neighbors(static_cast<int>(v), K);
  return g;
}

ThetaGraph build_theta_graph_brute_force(const std::vector<Point>& points, int K, Metric metric) {
  check_K(K);
  check_planar(points);
  ThetaGraph g;
  g.K = K;
  g.neighbor.resize(points.size());
  for (std::size_t v = 0; v < points.size(); ++v) {
    std::vector<int> best(K, -1);
    std::vector<double> best_d(K, kInf);
    for (int j = 0; j < K; ++j)
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == v || sector_of(points[v], points[i], K) != j) continue;
        const double d = point_distance(points[v], points[i], metric);
        if (d > 0.0) offer(best, best_d, j, static_cast<int>(i), d);
      }
    g.neighbor[v] = std::move(best);
  }
  return g;
}

WakeUpTree geo_o1(const Instance& inst, const GeoOptions& options) {
  require_points(inst, "geo_o1");
  check_K(options.K);
  if (options.K < 9 && !options.allow_small_K)
    throw ParameterError("geo_o1: K below 9 needs allow_small_K");
  const auto loc = group_locations(inst, all_sites(inst));
  TreeBuilder builder(inst);
  ThetaWalk walk(inst, builder, loc, options.K);
  const int home = loc.of_site[0];
  walk.mark_claimed(home);
  auto start = builder.cascade_here(builder.root_slot(), robots_at_location(inst, loc, home, 0));
  walk.run(start, home);
  if (!builder.complete())
    throw Error("geo_o1: the Theta-graph with K=" + std::to_string(options.K) + " does not reach every robot");
  return builder.take();
}

PixelGrid pixelize(const Instance& inst, int m) {
  require_points(inst, "pixelize");
  if (m < 1) throw ParameterError("pixelize: m must be at least 1");
  const auto& pts = inst.points_data().points;
  PixelGrid grid;
  grid.m = m;
  double max_x = -kInf, max_y = -kInf;
  grid.origin_x = grid.origin_y = kInf;
  for (const auto& p : pts) {
    grid.origin_x = std::min(grid.origin_x, p[0]);
    grid.origin_y = std::min(grid.origin_y, p[1]);
    max_x = std::max(max_x, p[0]);
    max_y = std::max(max_y, p[1]);
  }
  grid.side = std::max(max_x - grid.origin_x, max_y - grid.origin_y);

  std::map<std::pair<int, int>, int> index;
  grid.pixel_of_robot.resize(inst.robot_count());
  for (RobotId r = 0; r < static_cast<RobotId>(inst.robot_count()); ++r) {
    const auto& p = inst.coordinates(r);
    int ix = 0, iy = 0;
    if (grid.side > 0.0) {
      ix = std::min(m - 1, static_cast<int>(std::floor((p[0] - grid.origin_x) / grid.side * m)));
      iy = std::min(m - 1, static_cast<int>(std::floor((p[1] - grid.origin_y) / grid.side * m)));
    }
    auto [it, fresh] = index.try_emplace({ix, iy}, static_cast<int>(grid.pixels.size()));
    if (fresh) grid.pixels.push_back({ix, iy, r, {}});
    grid.pixels[it->second].robots.push_back(r);
    grid.pixel_of_robot[r] = it->second;
  }
  return grid;
}

int pixel_path_cap(int m) {
  const double lg = std::log2(static_cast<double>(std::max(m, 2)));
  return std::max(3, static_cast<int>(std::ceil(kPixelBalanceConstant * lg * lg)));
}

namespace {

/// Enumerates wake-up trees over pixel representatives, attaching pixels in
/// increasing (wake time, index) order so every tree is generated once.
class PixelTreeSearch {
 public:
  PixelTreeSearch(const Instance& inst, const PixelGrid& grid, const GeoPtasOptions& options)
      : inst_(inst), options_(options), p_(static_cast<int>(grid.pixels.size())), path_cap_(pixel_path_cap(grid.m)) {
    cap_.resize(p_);
    for (int x = 0; x < p_; ++x) {
      const int r = static_cast<int>(grid.pixels[x].robots.size());
      cap_[x] = std::min(grid.m * grid.m - 1, x == 0 ? r : r + 1);
    }
    dist_.assign(p_, std::vector<double>(p_, 0.0));
    for (int a = 0; a < p_; ++a)
      for (int b = 0; b < p_; ++b)
        dist_[a][b] = inst.distance(grid.pixels[a].representative, grid.pixels[b].representative);
    parent_.assign(p_, -1);
    wake_.assign(p_, 0.0);
    depth_.assign(p_, 0);
    degree_.assign(p_, 0);
    attached_.assign(p_, 0);
  }

  void run() {
    attached_[0] = 1;
    depth_[0] = 1;
    dfs(1, 0.0, 0, 0.0);
  }

  bool found() const { return !best_parent_.empty(); }
  const std::vector<int>& best_parent() const { return best_parent_; }
  double best() const { return best_; }
  std::uint64_t trees() const { return trees_; }
  double distance(int a, int b) const { return dist_[a][b]; }

 private:
  void dfs(int count, double last_wake, int last_index, double makespan) {
    if (++visited_ > options_.max_trees)
      throw CapacityError("geo_ptas: pixel-tree enumeration exceeded " + std::to_string(options_.max_trees) +
                          " trees (the scheme enumerates 2^O(m^2 log m) trees)");
    if (count == p_) {
      ++trees_;
      if (makespan < best_ - 1e-12) {
        best_ = makespan;
        best_parent_ = parent_;
      }
      return;
    }
    for (int x = 1; x < p_; ++x) {
      if (attached_[x]) continue;
      for (int y = 0; y < p_; ++y) {
        if (!attached_[y] || degree_[y] >= cap_[y] || depth_[y] + 1 > path_cap_) continue;
        const double w = wake_[y] + dist_[y][x];
        if (w < last_wake || (w == last_wake && x < last_index)) continue;
        if (std::max(makespan, w) >= best_ - 1e-12) continue;
        attached_[x] = 1;
        parent_[x] = y;
        wake_[x] = w;
        depth_[x] = depth_[y] + 1;
        ++degree_[y];
        dfs(count + 1, w, x, std::max(makespan, w));
        --degree_[y];
        attached_[x] = 0;
        parent_[x] = -1;
      }
    }
  }

  const Instance& inst_;
  const GeoPtasOptions& options_;
  int p_;
  int path_cap_;
  std::vector<int> cap_;
  std::vector<std::vector<double>> dist_;
  std::vector<int> parent_;
  std::vector<double> wake_;
  std::vector<int> depth_;
  std::vector<int> degree_;
  std::vector<char> attached_;
  std::vector<int> best_parent_;
  double best_ = kInf;
  std::uint64_t trees_ = 0;
  std::uint64_t visited_ = 0;
};

// Wakes the robots of every pixel with an in-pixel Theta walk, then sends free robots to child pixels.
WakeUpTree expand_pixel_tree(const Instance& inst, const PixelGrid& grid, const std::vector<int>& parent,
                             const PixelTreeSearch& search, int K) {
  const int p = static_cast<int>(grid.pixels.size());
  std::vector<std::vector<int>> kids(p);
  for (int x = 1; x < p; ++x) kids[parent[x]].push_back(x);
  std::vector<double> height(p, 0.0);
  std::vector<int> order{0};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : kids[order[i]]) order.push_back(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int c : kids[*it]) height[*it] = std::max(height[*it], search.distance(*it, c) + height[c]);

  TreeBuilder builder(inst);
  std::vector<std::pair<Slot, int>> pending{{builder.root_slot(), 0}};
  while (!pending.empty()) {
    auto [entry, x] = pending.back();
    pending.pop_back();
    const auto& pix = grid.pixels[x];
    std::vector<SiteId> sites;
    for (RobotId r : pix.robots)
      if (sites.empty() || sites.back() != inst.site_of(r)) sites.push_back(inst.site_of(r));
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    const auto loc = group_locations(inst, sites);
    ThetaWalk walk(inst, builder, loc, K);
    const int home = loc.of_site[inst.site_of(pix.representative)];
    walk.mark_claimed(home);
    const auto start = x == 0 ? builder.cascade_here(entry, robots_at_location(inst, loc, home, 0))
                              : builder.claim_site(entry, robots_at_location(inst, loc, home, kNoRobot));
    auto free = walk.run(start, home);
    if (!walk.all_claimed()) throw Error("geo_ptas: in-pixel Theta walk did not reach every robot");

    auto children = kids[x];
    std::stable_sort(children.begin(), children.end(), [&](int a, int b) {
      return search.distance(x, a) + height[a] > search.distance(x, b) + height[b];
    });
    for (int c : children) {
      const RobotId rep = grid.pixels[c].representative;
      std::size_t pick = 0;
      double soonest = kInf;
      for (std::size_t k = 0; k < free.size(); ++k) {
        const double arrive = free[k].time + inst.distance(free[k].node, rep);
        if (arrive < soonest) {
          soonest = arrive;
          pick = k;
        }
      }
      pending.emplace_back(free.at(pick), c);
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  return builder.take();
}

}  // namespace

GeoPtasResult geo_ptas(const Instance& inst, const GeoPtasOptions& options) {
  require_points(inst, "geo_ptas");
  if (!(options.epsilon > 0.0) || options.epsilon > 1.0) throw ParameterError("geo_ptas: epsilon must lie in (0, 1]");
  const int m = options.m_override > 0
                    ? options.m_override
                    : static_cast<int>(std::ceil(options.pixels_per_inverse_epsilon / options.epsilon - 1e-12));
  if (m > 4 && !options.allow_large_grid) throw ParameterError("geo_ptas: grid size above 4 needs allow_large_grid");

  GeoPtasResult result;
  result.m = m;
  const PixelGrid grid = pixelize(inst, m);
  result.pixels = grid.pixels.size();

  PixelTreeSearch search(inst, grid, options);
  search.run();
  result.trees = search.trees();

  GeoOptions o1;
  o1.K = options.K;
  result.tree = geo_o1(inst, o1);
  result.makespan = evaluate_makespan(inst, result.tree);
  result.used_fallback = true;
  if (search.found()) {
    result.pixel_tree_makespan = search.best();
    WakeUpTree expanded = expand_pixel_tree(inst, grid, search.best_parent(), search, options.K);
    result.expanded_makespan = evaluate_makespan(inst, expanded);
    if (result.expanded_makespan <= result.makespan) {
      result.tree = std::move(expanded);
      result.makespan = result.expanded_makespan;
      result.used_fallback = false;
    }
  }
  return result;
}

}  // namespace freezetag::geometry
