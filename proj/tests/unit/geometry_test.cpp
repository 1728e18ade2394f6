#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "freezetag/errors.hpp"
#include "freezetag/exact.hpp"
#include "freezetag/geometry.hpp"
#include "oracles.hpp"
#include "suites.hpp"

namespace freezetag {
namespace {

using geometry::Point;

Instance points_instance(std::vector<Point> pts, std::vector<int> robots = {}) {
  PointsData p;
  p.points = std::move(pts);
  p.robots = std::move(robots);
  return Instance::points(std::move(p));
}

Instance scaled(const Instance& inst, double factor) {
  PointsData p = inst.points_data();
  for (auto& pt : p.points)
    for (double& x : pt) x *= factor;
  return Instance::points(std::move(p));
}

double optimum(const Instance& inst) { return exact::solve_optimal(inst).makespan; }

TEST(Sector, HalfOpenFromPositiveX) {
  EXPECT_EQ(geometry::sector_of({0, 0}, {1, 0}, 9), 0);
  EXPECT_EQ(geometry::sector_of({0, 0}, {0, 1}, 4), 1);  // exactly on a boundary
  EXPECT_EQ(geometry::sector_of({0, 0}, {-1, 0}, 9), 4);
  EXPECT_EQ(geometry::sector_of({0, 0}, {0, -1}, 9), 6);
  EXPECT_EQ(geometry::sector_of({0, 0}, {1, -1e-12}, 9), 8);
}

TEST(ThetaGraph, TwoPoints) {
  const auto g = geometry::build_theta_graph({{0, 0}, {2, 1}}, 9);
  std::set<int> a(g.neighbor[0].begin(), g.neighbor[0].end());
  std::set<int> b(g.neighbor[1].begin(), g.neighbor[1].end());
  EXPECT_EQ(a, (std::set<int>{-1, 1}));
  EXPECT_EQ(b, (std::set<int>{-1, 0}));
}

TEST(ThetaGraph, ColinearNearestInSector) {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}};
  const auto g = geometry::build_theta_graph(pts, 9);
  EXPECT_EQ(g.neighbor[0][0], 1);
  EXPECT_EQ(g.sorted_neighbors(pts, 0, Metric::L2), (std::vector<int>{1}));
  EXPECT_EQ(g.sorted_neighbors(pts, 1, Metric::L2), (std::vector<int>{0, 2}));
}

TEST(ThetaGraph, CoincidentPointsAreNotNeighbors) {
  const std::vector<Point> pts{{0, 0}, {0, 0}, {1, 1}};
  const auto g = geometry::build_theta_graph(pts, 9);
  for (int j = 0; j < 9; ++j) EXPECT_NE(g.neighbor[0][j], 1);
}

TEST(ThetaGraph, Errors) {
  EXPECT_THROW(geometry::build_theta_graph({{0, 0}}, 0), ParameterError);
  EXPECT_THROW(geometry::build_theta_graph_brute_force({{0, 0}}, 0), ParameterError);
  EXPECT_THROW(geometry::build_theta_graph({{0, 0, 0}, {1, 1, 1}}, 9), PreconditionError);
}

TEST(ThetaGraph, MatchesBruteForce) {
  families::Rng rng(171);
  for (int i = 0; i < 80; ++i) {
    const auto pts = testing::random_planar(rng, rng.integer(1, 50), i % 3 == 0);
    for (int K : {9, 4, 13}) {
      const auto fast = geometry::build_theta_graph(pts, K);
      const auto slow = geometry::build_theta_graph_brute_force(pts, K);
      EXPECT_EQ(fast.neighbor, slow.neighbor);
    }
    for (Metric metric : {Metric::L1, Metric::LInf}) {
      EXPECT_EQ(geometry::build_theta_graph(pts, 9, metric).neighbor,
                geometry::build_theta_graph_brute_force(pts, 9, metric).neighbor);
    }
  }
}

TEST(GeoO1, OnePointAway) {
  const auto inst = points_instance({{0, 0}, {1, 0}});
  EXPECT_DOUBLE_EQ(evaluate_makespan(inst, geometry::geo_o1(inst)), 1.0);
}

TEST(GeoO1, UnitCircleAroundSource) {
  std::vector<Point> pts{{0, 0}};
  for (int i = 0; i < 9; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 9.0;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  const auto inst = points_instance(pts);
  const auto tree = geometry::geo_o1(inst);
  ASSERT_TRUE(validate_tree(inst, tree).empty());
  const double t = evaluate_makespan(inst, tree);
  EXPECT_LE(t, geometry::kDiameterConstant * 2.0);
  EXPECT_LE(t, geometry::kGeoConstant * optimum(inst));
}

TEST(GeoO1, SmallKNeedsOptIn) {
  const auto inst = points_instance({{0, 0}, {1, 0}});
  EXPECT_THROW(geometry::geo_o1(inst, {4, false}), ParameterError);
  EXPECT_DOUBLE_EQ(evaluate_makespan(inst, geometry::geo_o1(inst, {4, true})), 1.0);
}

TEST(GeoO1, ColocatedRobots) {
  const auto inst = points_instance({{0, 0}, {1, 0}, {1, 1}}, {2, 3, 1});
  const auto tree = geometry::geo_o1(inst);
  EXPECT_TRUE(validate_tree(inst, tree).empty());
}

TEST(GeoO1, WithinConstantsOnRandomSets) {
  families::Rng rng(173);
  for (int i = 0; i < 120; ++i) {
    const auto inst = testing::random_points_instance(rng, rng.integer(1, 9));
    const auto tree = geometry::geo_o1(inst);
    ASSERT_TRUE(validate_tree(inst, tree).empty());
    const double t = evaluate_makespan(inst, tree);
    const double opt = optimum(inst);
    EXPECT_LE(t, geometry::kGeoConstant * opt + 1e-9);
    EXPECT_LE(t, geometry::kDiameterConstant * testing::robot_diameter(inst) + 1e-9);
  }
}

TEST(GeoO1, ScalingKeepsTheTree) {
  families::Rng rng(179);
  for (int i = 0; i < 40; ++i) {
    const auto inst = testing::random_points_instance(rng, rng.integer(2, 40));
    const auto big = scaled(inst, 2.5);
    const auto a = geometry::geo_o1(inst);
    const auto b = geometry::geo_o1(big);
    EXPECT_EQ(a, b);
    EXPECT_NEAR(evaluate_makespan(big, b), 2.5 * evaluate_makespan(inst, a), 1e-9);
  }
}

TEST(Pixelize, UnitSquareCorners) {
  const auto grid = geometry::pixelize(points_instance({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 2);
  EXPECT_EQ(grid.pixels.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(grid.pixels[i].representative, static_cast<RobotId>(i));
}

TEST(Pixelize, OnePixel) {
  const auto grid = geometry::pixelize(points_instance({{0, 0}, {0.1, 0.2}, {0.2, 0.1}, {4, 4}}, {1, 1, 1, 1}), 1);
  ASSERT_EQ(grid.pixels.size(), 1u);
  EXPECT_EQ(grid.pixels[0].representative, 0);
  const auto same = geometry::pixelize(points_instance({{3, 3}, {3, 3}}), 4);
  EXPECT_EQ(same.pixels.size(), 1u);
  EXPECT_DOUBLE_EQ(same.side, 0.0);
}

TEST(Pixelize, MatchesCoordinateArithmetic) {
  families::Rng rng(181);
  for (int i = 0; i < 30; ++i) {
    const auto inst = testing::random_points_instance(rng, 10);
    const auto grid = geometry::pixelize(inst, 3);
    const auto& pts = inst.points_data().points;
    double lo_x = pts[0][0], lo_y = pts[0][1], hi_x = lo_x, hi_y = lo_y;
    for (const auto& p : pts) {
      lo_x = std::min(lo_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_x = std::max(hi_x, p[0]);
      hi_y = std::max(hi_y, p[1]);
    }
    const double side = std::max(hi_x - lo_x, hi_y - lo_y);
    for (RobotId r = 0; r < 10; ++r) {
      const auto& px = grid.pixels[grid.pixel_of_robot[r]];
      const int ix = std::min(2, static_cast<int>((inst.coordinates(r)[0] - lo_x) / side * 3));
      const int iy = std::min(2, static_cast<int>((inst.coordinates(r)[1] - lo_y) / side * 3));
      EXPECT_EQ(px.ix, ix);
      EXPECT_EQ(px.iy, iy);
      EXPECT_LE(px.representative, r);
    }
  }
  EXPECT_THROW(geometry::pixelize(points_instance({{0, 0}}), 0), ParameterError);
}

TEST(GeoPtas, OnePixelIsGeoO1) {
  families::Rng rng(191);
  const auto inst = testing::random_points_instance(rng, 8);
  geometry::GeoPtasOptions o;
  o.m_override = 1;
  const auto r = geometry::geo_ptas(inst, o);
  EXPECT_EQ(r.pixels, 1u);
  EXPECT_DOUBLE_EQ(r.makespan, evaluate_makespan(inst, geometry::geo_o1(inst)));
}

TEST(GeoPtas, CornerRobots) {
  const auto inst = points_instance({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {2, 1, 1, 1});
  geometry::GeoPtasOptions o;
  o.m_override = 2;
  const auto r = geometry::geo_ptas(inst, o);
  const double opt = optimum(inst);
  EXPECT_GE(r.makespan, opt - 1e-9);
  EXPECT_LE(r.makespan, opt + geometry::kExpansionConstant * 1.0 / 2.0);
  EXPECT_TRUE(validate_tree(inst, r.tree).empty());
}

TEST(GeoPtas, Parameters) {
  const auto inst = points_instance({{0, 0}, {1, 0}});
  geometry::GeoPtasOptions o;
  o.epsilon = 0.0;
  EXPECT_THROW(geometry::geo_ptas(inst, o), ParameterError);
  o.epsilon = 0.25;  // m = 8
  EXPECT_THROW(geometry::geo_ptas(inst, o), ParameterError);
  o.allow_large_grid = true;
  EXPECT_NO_THROW(geometry::geo_ptas(inst, o));
  families::Rng rng(193);
  geometry::GeoPtasOptions tiny;
  tiny.max_trees = 3;
  EXPECT_THROW(geometry::geo_ptas(testing::random_points_instance(rng, 30), tiny), CapacityError);
}

TEST(GeoPtas, GuaranteesOnRandomSets) {
  families::Rng rng(197);
  for (int i = 0; i < 40; ++i) {
    const auto inst = testing::random_points_instance(rng, rng.integer(2, 8));
    const auto r = geometry::geo_ptas(inst);
    ASSERT_TRUE(validate_tree(inst, r.tree).empty());
    const double opt = optimum(inst);
    EXPECT_GE(r.makespan, opt - 1e-9);
    EXPECT_LE(r.makespan, evaluate_makespan(inst, geometry::geo_o1(inst)) + 1e-9);
    EXPECT_LE(r.makespan, (1.0 + geometry::kGeoPtasConstant * 1.0) * opt + 1e-9);
    if (r.expanded_makespan > 0.0) {
      const double side = geometry::pixelize(inst, r.m).side;
      const double lg = std::log2(static_cast<double>(r.m));
      EXPECT_LE(r.expanded_makespan, r.pixel_tree_makespan + geometry::kExpansionConstant * lg * lg / r.m * side + 1e-9);
    }
  }
}

TEST(GeoPtas, FinerGridStaysBelowGeoO1) {
  families::Rng rng(199);
  for (int i = 0; i < 10; ++i) {
    const auto inst = testing::random_points_instance(rng, 8);
    geometry::GeoPtasOptions o;
    o.m_override = 3;
    const auto r = geometry::geo_ptas(inst, o);
    EXPECT_TRUE(validate_tree(inst, r.tree).empty());
    EXPECT_GE(r.makespan, optimum(inst) - 1e-9);
    EXPECT_LE(r.makespan, evaluate_makespan(inst, geometry::geo_o1(inst)) + 1e-9);
  }
}

TEST(GeoPtas, ScalingKeepsTheTree) {
  families::Rng rng(211);
  for (int i = 0; i < 10; ++i) {
    const auto inst = testing::random_points_instance(rng, rng.integer(2, 8));
    const auto a = geometry::geo_ptas(inst);
    const auto b = geometry::geo_ptas(scaled(inst, 4.0));
    EXPECT_EQ(a.tree, b.tree);
    EXPECT_NEAR(b.makespan, 4.0 * a.makespan, 1e-9);
  }
}

}  // namespace
}  // namespace freezetag
