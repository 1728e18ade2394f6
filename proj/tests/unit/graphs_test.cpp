#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "freezetag/errors.hpp"
#include "freezetag/exact.hpp"
#include "freezetag/graphs.hpp"
#include "oracles.hpp"
#include "suites.hpp"

namespace freezetag {
namespace {

GraphData path_graph(int n, int robots) {
  GraphData g;
  g.vertices = n;
  for (int v = 0; v + 1 < n; ++v) g.edges.push_back({v, v + 1, 1.0});
  g.robots.assign(n, robots);
  return g;
}

GraphData unit_star_graph(int leaves, int center_robots) {
  GraphData g;
  g.vertices = leaves + 1;
  for (int v = 1; v <= leaves; ++v) g.edges.push_back({0, v, 1.0});
  g.robots.assign(g.vertices, 1);
  g.robots[0] = center_robots;
  return g;
}

double optimum(const Instance& inst, std::size_t max_robots = 10) {
  exact::Limits limits;
  limits.max_robots = max_robots;
  return exact::solve_optimal(inst, limits).makespan;
}

double online_ratio(const Instance& inst, std::size_t max_robots = 10) {
  const double t = optimum(inst, max_robots);
  return t > 0.0 ? evaluate_makespan(inst, graphs::online_cascade(inst)) / t : 1.0;
}

TEST(GraphStats, DeltaFormula) {
  // Source has degree 3 and 1 robot; vertex 1 has degree 3 and 1 robot.
  GraphData g;
  g.vertices = 5;
  g.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 4.0}, {1, 2, 2.0}, {1, 4, 1.0}};
  g.robots = {1, 1, 0, 2, 1};
  const auto s = graphs::graph_stats(g);
  EXPECT_EQ(s.degree[0], 3);
  EXPECT_DOUBLE_EQ(s.delta, 3.0);
  EXPECT_DOUBLE_EQ(s.local_ratio[0], 4.0);
  EXPECT_DOUBLE_EQ(s.rho_max, 4.0);
  EXPECT_EQ(graphs::bfs_deficient_vertices(g), (std::vector<int>{0}));
}

TEST(Bfs, PathGraph) {
  const auto inst = Instance::graph(path_graph(3, 1));
  EXPECT_DOUBLE_EQ(evaluate_makespan(inst, graphs::bfs_wakeup(inst)), 2.0);
}

TEST(Bfs, UnitFourCycle) {
  GraphData g;
  g.vertices = 4;
  g.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}};
  g.robots = {2, 2, 2, 2};
  const auto inst = Instance::graph(g);
  EXPECT_DOUBLE_EQ(evaluate_makespan(inst, graphs::bfs_wakeup(inst)), 2.0);
  EXPECT_DOUBLE_EQ(optimum(inst), 2.0);
}

TEST(Bfs, StarWithEnoughRobotsAtTheCenter) {
  const auto inst = Instance::graph(unit_star_graph(5, 5));
  EXPECT_DOUBLE_EQ(evaluate_makespan(inst, graphs::bfs_wakeup(inst)), 1.0);
}

TEST(Bfs, ListsDeficientVertices) {
  const auto inst = Instance::graph(unit_star_graph(3, 1));
  try {
    graphs::bfs_wakeup(inst);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("0"), std::string::npos);
  }
}

TEST(Bfs, MakespanIsEccentricity) {
  families::Rng rng(151);
  for (int i = 0; i < 120; ++i) {
    const auto inst = testing::random_padded_graph(rng);
    const auto tree = graphs::bfs_wakeup(inst);
    ASSERT_TRUE(validate_tree(inst, tree).empty());
    EXPECT_NEAR(evaluate_makespan(inst, tree), testing::farthest_from_source(inst), 1e-9);
  }
}

TEST(OnlineView, CountsOutOfViewQueries) {
  const auto g = path_graph(3, 1);
  graphs::OnlineView view(g, false);
  view.visit(0);
  EXPECT_EQ(view.neighbors(0).size(), 1u);
  EXPECT_EQ(view.out_of_view_queries(), 0u);
  view.neighbors(2);
  EXPECT_EQ(view.out_of_view_queries(), 1u);
  graphs::OnlineView strict(g, true);
  strict.visit(0);
  EXPECT_THROW(strict.neighbors(1), Error);
}

TEST(Online, PathGraphMatchesBfs) {
  const auto inst = Instance::graph(path_graph(6, 1));
  EXPECT_DOUBLE_EQ(evaluate_makespan(inst, graphs::online_cascade(inst)),
                   evaluate_makespan(inst, graphs::bfs_wakeup(inst)));
}

TEST(Online, UnitStarWithinBound) {
  const auto inst = Instance::graph(unit_star_graph(8, 1));
  const double delta = graphs::graph_stats(inst.graph_data()).delta;
  EXPECT_DOUBLE_EQ(delta, 8.0);
  EXPECT_LE(online_ratio(inst), graphs::kOnlineConstant * (1.0 + std::log2(9.0)));
}

TEST(Online, StaysInsideItsView) {
  families::Rng rng(157);
  for (int i = 0; i < 100; ++i) {
    const auto inst = testing::random_bounded_graph(rng, 12);
    graphs::OnlineStats stats;
    const auto tree = graphs::online_cascade(inst, &stats, true);
    EXPECT_EQ(stats.out_of_view_queries, 0u);
    EXPECT_TRUE(validate_tree(inst, tree).empty());
    EXPECT_GE(evaluate_makespan(inst, tree), lower_bounds(inst).best() - kTolerance);
  }
}

TEST(Online, CompetitiveOnSmallGraphs) {
  families::Rng rng(163);
  for (int i = 0; i < 100; ++i) {
    const auto inst = testing::random_bounded_graph(rng, 9);
    const double delta = graphs::graph_stats(inst.graph_data()).delta;
    EXPECT_LE(online_ratio(inst), graphs::kOnlineConstant * (1.0 + std::log2(1.0 + delta)) + 1e-9);
  }
}

TEST(Adversary, Construction) {
  const auto inst = graphs::adversary_family(2, 0.1, 1);
  const auto& g = inst.graph_data();
  EXPECT_EQ(g.vertices, 4);
  EXPECT_EQ(g.robots, (std::vector<int>{1, 1, 1, 2}));
  EXPECT_EQ(inst.robot_count(), 5u);
  EXPECT_DOUBLE_EQ(inst.distance(0, inst.first_robot_at(3)), 1.1);
}

TEST(Adversary, OfflineOptimumIsConstant) {
  const auto inst = graphs::adversary_family(4, 0.1, graphs::worst_adversary_placement(4));
  EXPECT_EQ(inst.robot_count(), 9u);
  EXPECT_LE(optimum(inst), 3.2);
}

TEST(Adversary, RejectsBadParameters) {
  EXPECT_THROW(graphs::adversary_family(1, 0.1, 0), ParameterError);
  EXPECT_THROW(graphs::adversary_family(4, 1.0, 0), ParameterError);
  EXPECT_THROW(graphs::adversary_family(4, 0.1, 4), ParameterError);
}

TEST(Adversary, RatioGrowsWithK) {
  double previous = 0.0;
  for (int k : {2, 4, 8}) {
    const auto inst = graphs::adversary_family(k, 0.1, graphs::worst_adversary_placement(k));
    graphs::OnlineStats stats;
    const double online = evaluate_makespan(inst, graphs::online_cascade(inst, &stats, true));
    const double ratio = online / optimum(inst, inst.robot_count());
    EXPECT_GE(ratio, previous - 1e-9) << "k=" << k;
    EXPECT_EQ(stats.out_of_view_queries, 0u);
    previous = ratio;
  }
  EXPECT_GT(previous, 2.0);
}

}  // namespace
}  // namespace freezetag
