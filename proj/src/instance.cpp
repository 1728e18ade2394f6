#include "freezetag/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "freezetag/errors.hpp"

namespace freezetag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string where(const char* field, std::size_t index) {
  return std::string(field) + "[" + std::to_string(index) + "]";
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error([&] {
        std::string msg = "validation failed:";
        for (const auto& v : violations) {
          msg += " [";
          if (v.robot >= 0) msg += "robot " + std::to_string(v.robot) + ": ";
          msg += v.message + "]";
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

ValidationError::ValidationError(int robot, std::string message)
    : ValidationError(std::vector<Violation>{Violation{robot, std::move(message)}}) {}

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Star:
      return "star";
    case InstanceKind::Graph:
      return "graph";
    case InstanceKind::Points:
      return "points";
  }
  return "unknown";
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::L1:
      return "L1";
    case Metric::L2:
      return "L2";
    case Metric::LInf:
      return "Linf";
  }
  return "unknown";
}

Metric metric_from_string(const std::string& name) {
  if (name == "L1") return Metric::L1;
  if (name == "L2") return Metric::L2;
  if (name == "Linf" || name == "LInf") return Metric::LInf;
  throw ParameterError("unknown metric '" + name + "'");
}

double point_distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = std::abs(a[i] - b[i]);
    switch (metric) {
      case Metric::L1:
        acc += diff;
        break;
      case Metric::L2:
        acc += diff * diff;
        break;
      case Metric::LInf:
        acc = std::max(acc, diff);
        break;
    }
  }
  if (metric == Metric::L2) {
    if (a.size() == 2) return std::hypot(a[0] - b[0], a[1] - b[1]);
    return std::sqrt(acc);
  }
  return acc;
}

std::vector<std::vector<double>> all_pairs_shortest_paths(const GraphData& graph) {
  const int n = graph.vertices;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : graph.edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    auto& d = dist[s];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > d[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (du + w < d[v]) {
          d[v] = du + w;
          pq.emplace(d[v], v);
        }
      }
    }
  }
  return dist;
}

void Instance::place_robots(const std::vector<int>& counts_per_site) {
  robots_at_site_ = counts_per_site;
  first_robot_.assign(counts_per_site.size(), kNoRobot);
  site_of_robot_.clear();
  for (std::size_t s = 0; s < counts_per_site.size(); ++s) {
    first_robot_[s] = static_cast<RobotId>(site_of_robot_.size());
    for (int k = 0; k < counts_per_site[s]; ++k) site_of_robot_.push_back(static_cast<SiteId>(s));
  }
}

Instance Instance::star(std::vector<Spoke> spokes) {
  std::vector<Violation> problems;
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    if (!(spokes[i].length > 0.0) || !std::isfinite(spokes[i].length))
      problems.push_back({-1, where("spokes", i) + ".length must be a positive finite number"});
    if (spokes[i].robots < 1)
      problems.push_back({-1, where("spokes", i) + ".robots must be a positive integer"});
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  Instance inst;
  inst.kind_ = InstanceKind::Star;
  const std::size_t sites = spokes.size() + 1;
  std::vector<int> counts(sites, 1);
  inst.site_label_.assign(sites, -1);
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    counts[i + 1] = spokes[i].robots;
    inst.site_label_[i + 1] = static_cast<int>(i);
  }
  inst.place_robots(counts);
  inst.dist_.assign(sites * sites, 0.0);
  auto len = [&](std::size_t s) { return s == 0 ? 0.0 : spokes[s - 1].length; };
  for (std::size_t a = 0; a < sites; ++a)
    for (std::size_t b = 0; b < sites; ++b)
      if (a != b) inst.dist_[a * sites + b] = len(a) + len(b);
  inst.star_.spokes = std::move(spokes);
  return inst;
}

Instance Instance::graph(GraphData data) {
  std::vector<Violation> problems;
  if (data.vertices < 1) problems.push_back({-1, "graph needs at least one vertex"});
  if (data.source < 0 || data.source >= data.vertices) problems.push_back({-1, "source vertex out of range"});
  if (static_cast<int>(data.robots.size()) != data.vertices)
    problems.push_back({-1, "robots list must have one entry per vertex"});
  for (std::size_t i = 0; i < data.edges.size(); ++i) {
    const auto& e = data.edges[i];
    if (e.u < 0 || e.u >= data.vertices || e.v < 0 || e.v >= data.vertices)
      problems.push_back({-1, where("edges", i) + " endpoint out of range"});
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      problems.push_back({-1, where("edges", i) + " weight must be nonnegative and finite"});
  }
  if (problems.empty()) {
    for (std::size_t v = 0; v < data.robots.size(); ++v)
      if (data.robots[v] < 0) problems.push_back({-1, where("robots", v) + " must be nonnegative"});
    if (data.robots[data.source] < 1) problems.push_back({-1, "missing source: source vertex holds no robot"});
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  auto apsp = all_pairs_shortest_paths(data);
  for (int v = 0; v < data.vertices; ++v)
    if (!std::isfinite(apsp[data.source][v]))
      throw ValidationError(-1, "graph is disconnected: vertex " + std::to_string(v) + " unreachable from source");

  Instance inst;
  inst.kind_ = InstanceKind::Graph;
  inst.site_label_.push_back(data.source);
  for (int v = 0; v < data.vertices; ++v)
    if (v != data.source && data.robots[v] > 0) inst.site_label_.push_back(v);
  const std::size_t sites = inst.site_label_.size();
  std::vector<int> counts(sites);
  for (std::size_t s = 0; s < sites; ++s) counts[s] = data.robots[inst.site_label_[s]];
  inst.place_robots(counts);
  inst.dist_.assign(sites * sites, 0.0);
  for (std::size_t a = 0; a < sites; ++a)
    for (std::size_t b = 0; b < sites; ++b)
      inst.dist_[a * sites + b] = apsp[inst.site_label_[a]][inst.site_label_[b]];
  inst.graph_ = std::move(data);
  return inst;
}

Instance Instance::points(PointsData data) {
  std::vector<Violation> problems;
  if (data.points.empty()) throw ValidationError(-1, "no robots: points list is empty");
  if (data.dim < 1) problems.push_back({-1, "dim must be positive"});
  if (data.robots.empty()) data.robots.assign(data.points.size(), 1);
  if (data.robots.size() != data.points.size())
    problems.push_back({-1, "robots list must have one entry per point"});
  if (data.source < 0 || data.source >= static_cast<int>(data.points.size()))
    problems.push_back({-1, "missing source: source index out of range"});
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    if (static_cast<int>(data.points[i].size()) != data.dim)
      problems.push_back({-1, where("points", i) + " has wrong dimension"});
    for (double c : data.points[i])
      if (!std::isfinite(c)) problems.push_back({-1, where("points", i) + " has a non-finite coordinate"});
  }
  if (problems.empty()) {
    for (std::size_t i = 0; i < data.robots.size(); ++i)
      if (data.robots[i] < 1) problems.push_back({-1, where("robots", i) + " must be a positive integer"});
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  Instance inst;
  inst.kind_ = InstanceKind::Points;
  inst.site_label_.push_back(data.source);
  for (int i = 0; i < static_cast<int>(data.points.size()); ++i)
    if (i != data.source) inst.site_label_.push_back(i);
  const std::size_t sites = inst.site_label_.size();
  std::vector<int> counts(sites);
  for (std::size_t s = 0; s < sites; ++s) counts[s] = data.robots[inst.site_label_[s]];
  inst.place_robots(counts);
  inst.dist_.assign(sites * sites, 0.0);
  for (std::size_t a = 0; a < sites; ++a)
    for (std::size_t b = 0; b < sites; ++b)
      inst.dist_[a * sites + b] =
          point_distance(data.points[inst.site_label_[a]], data.points[inst.site_label_[b]], data.metric);
  inst.points_ = std::move(data);
  return inst;
}

const StarData& Instance::star_data() const {
  if (kind_ != InstanceKind::Star) throw PreconditionError("instance is not a star");
  return star_;
}

const GraphData& Instance::graph_data() const {
  if (kind_ != InstanceKind::Graph) throw PreconditionError("instance is not a graph");
  return graph_;
}

const PointsData& Instance::points_data() const {
  if (kind_ != InstanceKind::Points) throw PreconditionError("instance is not a point set");
  return points_;
}

bool Instance::has_uniform_spokes() const {
  const auto& spokes = star_data().spokes;
  return std::all_of(spokes.begin(), spokes.end(),
                     [&](const Spoke& s) { return s.robots == spokes.front().robots; });
}

bool Instance::has_equal_lengths() const {
  const auto& spokes = star_data().spokes;
  return std::all_of(spokes.begin(), spokes.end(),
                     [&](const Spoke& s) { return s.length == spokes.front().length; });
}

const std::vector<double>& Instance::coordinates(RobotId robot) const {
  return points_data().points[site_label_[site_of(robot)]];
}

bool metric_is_consistent(const Instance& instance, std::size_t max_triples) {
  const std::size_t s = instance.site_count();
  for (std::size_t a = 0; a < s; ++a) {
    if (std::abs(instance.site_distance(a, a)) > kTolerance) return false;
    for (std::size_t b = 0; b < s; ++b)
      if (std::abs(instance.site_distance(a, b) - instance.site_distance(b, a)) > kTolerance) return false;
  }
  const std::size_t total = s * s * s;
  const std::size_t stride = total <= max_triples ? 1 : total / max_triples + 1;
  for (std::size_t t = 0; t < total; t += stride) {
    const std::size_t a = t / (s * s), b = (t / s) % s, c = t % s;
    if (instance.site_distance(a, c) >
        instance.site_distance(a, b) + instance.site_distance(b, c) + kTolerance)
      return false;
  }
  return true;
}

}  // namespace freezetag
