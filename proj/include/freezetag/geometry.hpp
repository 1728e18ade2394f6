#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag::geometry {

using Point = std::vector<double>;

/// Sector-nearest neighbors: neighbor[v][j] is the nearest point (ties:
/// smaller index) in the half-open angular sector [j*2pi/K, (j+1)*2pi/K)
/// around v, or -1 when the sector is empty. Points at distance 0 from v are
/// never neighbors.
struct ThetaGraph {
  int K = 9;
  std::vector<std::vector<int>> neighbor;

  // Distinct neighbors of v, ascending by (distance, index).
  std::vector<int> sorted_neighbors(const std::vector<Point>& points, int v, Metric metric) const;
};

// Sector of `to` as seen from `from`.
int sector_of(const Point& from, const Point& to, int K);

// Fast builder (k-d tree search). Throws ParameterError for K < 1.
ThetaGraph build_theta_graph(const std::vector<Point>& points, int K, Metric metric = Metric::L2);
// O(n^2 K) reference builder.
ThetaGraph build_theta_graph_brute_force(const std::vector<Point>& points, int K, Metric metric = Metric::L2);

struct GeoOptions {
  int K = 9;
  // Allow K < 9 (the Theta-graph may then fail to reach every robot).
  bool allow_small_K = false;
};

/// Each newly woken robot walks through its Theta-graph neighbors in
/// ascending distance, waking those not yet claimed and skipping the rest.
WakeUpTree geo_o1(const Instance& points, const GeoOptions& options = {});

/// Constants of the geo_o1 guarantees, measured on the acceptance suite:
/// makespan <= C_geo * optimum and makespan <= C_diam * diam(R).
inline constexpr double kGeoConstant = 3.0;
inline constexpr double kDiameterConstant = 3.0;

struct Pixel {
  int ix = 0;
  int iy = 0;
  RobotId representative = kNoRobot;  // lowest robot id in the pixel
  std::vector<RobotId> robots;        // ascending
};

struct PixelGrid {
  int m = 1;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double side = 0.0;               // side of the bounding square (0 when all points coincide)
  std::vector<Pixel> pixels;       // ordered by first robot
  std::vector<int> pixel_of_robot;
};

// Rescales the bounding square of the points to the unit square and buckets robots into an m x m grid.
PixelGrid pixelize(const Instance& points, int m);

struct GeoPtasOptions {
  double epsilon = 1.0;
  int m_override = 0;             // > 0: use this grid size instead of ceil(c_m / epsilon)
  double pixels_per_inverse_epsilon = 2.0;  // c_m
  bool allow_large_grid = false;  // accept m > 4
  int K = 9;
  std::uint64_t max_trees = 5'000'000;
};

/// Node cap on pixel-tree paths: max(3, ceil(c_b * log2(max(m, 2))^2)).
inline constexpr double kPixelBalanceConstant = 2.0;
int pixel_path_cap(int m);

/// Constants of the geo_ptas guarantees, measured on the acceptance suite:
/// makespan <= (1 + C_gp * epsilon) * optimum and makespan <= t_b(P) + C_exp * log2(m)^2 / m
/// (the second in units of the bounding-square side).
inline constexpr double kGeoPtasConstant = 1.0;
inline constexpr double kExpansionConstant = 4.0;

struct GeoPtasResult {
  WakeUpTree tree;
  double makespan = 0.0;
  int m = 0;
  std::size_t pixels = 0;
  double pixel_tree_makespan = 0.0;   // t_b of the best enumerated pixel tree
  double expanded_makespan = 0.0;     // makespan of its expansion
  std::uint64_t trees = 0;            // pixel trees enumerated
  bool used_fallback = false;         // plain geo_o1 was better
};

GeoPtasResult geo_ptas(const Instance& points, const GeoPtasOptions& options = {});

}  // namespace freezetag::geometry
