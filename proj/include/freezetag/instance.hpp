#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace freezetag {

// Robots are numbered densely 0..n-1; robot 0 is the source (initially awake).
using RobotId = int;
// Sites are the distinct occupied locations; site 0 always holds the source.
using SiteId = int;

inline constexpr RobotId kNoRobot = -1;
inline constexpr double kTolerance = 1e-9;

enum class InstanceKind { Star, Graph, Points };
enum class Metric { L1, L2, LInf };

std::string to_string(InstanceKind kind);
std::string to_string(Metric metric);
Metric metric_from_string(const std::string& name);

struct Spoke {
  double length = 0.0;
  int robots = 1;
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

struct StarData {
  std::vector<Spoke> spokes;
};

struct GraphData {
  int vertices = 0;
  int source = 0;
  std::vector<GraphEdge> edges;
  // robots[v] = number of robots at vertex v; robots[source] counts the source robot.
  std::vector<int> robots;
};

struct PointsData {
  int dim = 2;
  int source = 0;
  std::vector<std::vector<double>> points;
  // robots[i] = number of robots at points[i]; empty means one robot per point.
  std::vector<int> robots;
  Metric metric = Metric::L2;
};

/// A freeze-tag environment: a metric over occupied sites plus robot placement.
///
/// Every kind is reduced to the same representation: a dense site-by-site
/// distance matrix and a site for every robot. Robots at one site are distinct
/// ids at pairwise distance 0. Robot ids are assigned site by site, starting
/// with the source site, so robot 0 always sits at site 0.
///
/// Star: site 0 is the center, site i+1 is the leaf of spoke i.
/// Graph: sites are the occupied vertices (source first, then ascending id);
///   distances are all-pairs shortest paths.
/// Points: sites are the points (source first, then ascending index).
class Instance {
 public:
  static Instance star(std::vector<Spoke> spokes);
  static Instance graph(GraphData data);
  static Instance points(PointsData data);

  InstanceKind kind() const { return kind_; }
  std::size_t robot_count() const { return site_of_robot_.size(); }
  std::size_t site_count() const { return robots_at_site_.size(); }

  SiteId site_of(RobotId robot) const { return site_of_robot_[robot]; }
  int robots_at_site(SiteId site) const { return robots_at_site_[site]; }
  // First robot id housed at `site`.
  RobotId first_robot_at(SiteId site) const { return first_robot_[site]; }

  double site_distance(SiteId a, SiteId b) const { return dist_[a * site_count() + b]; }
  double distance(RobotId a, RobotId b) const { return site_distance(site_of(a), site_of(b)); }

  // Underlying label of a site: spoke index (-1 for the center), vertex id, or point index.
  int site_label(SiteId site) const { return site_label_[site]; }

  const StarData& star_data() const;
  const GraphData& graph_data() const;
  const PointsData& points_data() const;

  // Star: robot count is equal on every spoke.
  bool has_uniform_spokes() const;
  // Star: every spoke has the same length.
  bool has_equal_lengths() const;

  // Coordinates of a robot (Points only).
  const std::vector<double>& coordinates(RobotId robot) const;

 private:
  Instance() = default;
  void place_robots(const std::vector<int>& counts_per_site);

  InstanceKind kind_ = InstanceKind::Star;
  std::vector<SiteId> site_of_robot_;
  std::vector<int> robots_at_site_;
  std::vector<RobotId> first_robot_;
  std::vector<int> site_label_;
  std::vector<double> dist_;
  StarData star_;
  GraphData graph_;
  PointsData points_;
};

double point_distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric);

// All-pairs shortest paths over an undirected weighted graph (infinity when unreachable).
std::vector<std::vector<double>> all_pairs_shortest_paths(const GraphData& graph);

// Checks symmetry, zero diagonal and the triangle inequality of the site metric.
// Samples at most `max_triples` triples (all of them when the instance is small).
bool metric_is_consistent(const Instance& instance, std::size_t max_triples = 200000);

}  // namespace freezetag
