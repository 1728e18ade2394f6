#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>

#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag::exact {

struct Limits {
  std::size_t max_robots = 10;
  std::chrono::milliseconds time_budget{60'000};
};

struct Result {
  WakeUpTree tree;
  double makespan = 0.0;
  bool optimal = true;  // false when the time budget ran out first
  std::uint64_t nodes = 0;
};

// Minimum-makespan wake-up tree by branch and bound over rational strategies.
// Throws CapacityError when the instance has more than limits.max_robots robots.
Result solve_optimal(const Instance& instance, const Limits& limits = {});

// Same optimum for stars with equal robot counts, searching only trees whose
// spoke lengths are nondecreasing along every root-to-leaf path.
// Throws PreconditionError for non-star or non-uniform instances.
Result solve_optimal_equal_star(const Instance& star, const Limits& limits = {});

}  // namespace freezetag::exact
