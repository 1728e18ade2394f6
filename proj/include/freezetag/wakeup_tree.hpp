#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "freezetag/errors.hpp"
#include "freezetag/instance.hpp"

namespace freezetag {

/// Rooted tree over robots encoding who wakes whom.
///
/// If robot r was woken by robot r', the children of r are the robots woken
/// next by r (children[0]) and by r' (children[1]). The root (robot 0) has a
/// single robot available, so it has at most one child. Wake times follow
/// from the instance metric: wake(child) = wake(parent) + d(parent, child).
class WakeUpTree {
 public:
  WakeUpTree() = default;
  explicit WakeUpTree(std::size_t robots);

  static WakeUpTree from_parents(std::span<const RobotId> parents);

  std::size_t size() const { return parent_.size(); }
  RobotId parent(RobotId robot) const { return parent_[robot]; }
  const std::vector<RobotId>& children(RobotId robot) const { return children_[robot]; }
  const std::vector<RobotId>& parents() const { return parent_; }

  // Appends `child` under `parent`. Does not check degree bounds; see validate_tree.
  void attach(RobotId parent, RobotId child);
  // Moves `child`'s slot to the front of its parent's children list.
  void make_first_child(RobotId child);

  bool operator==(const WakeUpTree& other) const = default;

 private:
  std::vector<RobotId> parent_;
  std::vector<std::vector<RobotId>> children_;
};

// Reports every structural violation of `tree` against `instance`; empty means valid.
std::vector<Violation> validate_tree(const Instance& instance, const WakeUpTree& tree);

// Only checks that the tree is a rooted spanning tree (no degree bounds).
std::vector<Violation> validate_rooted_spanning(const WakeUpTree& tree);

// Wake time of every robot. Throws ValidationError on an invalid tree.
std::vector<double> wake_times(const Instance& instance, const WakeUpTree& tree);

// Depth of the tree in the instance metric (time the last robot wakes).
double evaluate_makespan(const Instance& instance, const WakeUpTree& tree);

// Largest number of nodes on a root-to-leaf path.
std::size_t max_path_nodes(const WakeUpTree& tree);

// Robots in preorder starting from the root (children visited in list order).
std::vector<RobotId> preorder(const WakeUpTree& tree);

// Time at which each robot comes to rest for good. A node hosts two robots
// (root: one); each robot not sent onward by one of the node's children rests there.
std::vector<double> completion_times(const Instance& instance, const WakeUpTree& tree);
double average_completion_time(const Instance& instance, const WakeUpTree& tree);

struct ScheduleEvent {
  double time = 0.0;
  RobotId waker = kNoRobot;
  RobotId woken = kNoRobot;
  RobotId parent = kNoRobot;  // tree node the waker departed from
  SiteId from_site = 0;
  SiteId to_site = 0;
};

struct Schedule {
  std::vector<ScheduleEvent> events;  // sorted by (time, woken)
  double makespan = 0.0;
};

Schedule build_schedule(const Instance& instance, const WakeUpTree& tree);
// Rebuilds the tree encoded by a schedule's parent links.
WakeUpTree tree_from_schedule(std::size_t robots, const Schedule& schedule);

struct LowerBounds {
  double max_distance_from_source = 0.0;
  double half_diameter = 0.0;

  double best() const { return max_distance_from_source > half_diameter ? max_distance_from_source : half_diameter; }
};

// Generic lower bounds on the optimal makespan over the occupied sites.
LowerBounds lower_bounds(const Instance& instance);

/// Incremental tree construction in terms of "slots".
///
/// A slot is one awake robot standing at a tree node, free to claim one
/// target. Claiming consumes the slot and yields two slots at the target
/// (the traveller and the robot it woke), so degree bounds hold by construction.
class TreeBuilder {
 public:
  struct Slot {
    RobotId node = kNoRobot;   // tree node the robot stands at
    RobotId robot = kNoRobot;  // physical robot
    double time = 0.0;         // wake time of `node`
  };

  explicit TreeBuilder(const Instance& instance);

  Slot root_slot() const { return Slot{0, 0, 0.0}; }

  // Sends the robot of `slot` to wake `target`; returns {traveller slot, woken robot slot}.
  std::pair<Slot, Slot> claim(const Slot& slot, RobotId target);

  // Sends the robot of `slot` to the site of `target` and wakes every robot
  // listed in `colocated` (all at that site, `target` first) through a
  // zero-length binary cascade. Returns the |colocated|+1 resulting slots.
  std::vector<Slot> claim_site(const Slot& slot, std::span<const RobotId> colocated);

  // Same for robots already standing at their own site: wakes the colocated
  // robots without travel, consuming `slot` and returning the resulting slots.
  std::vector<Slot> cascade_here(const Slot& slot, std::span<const RobotId> colocated);

  bool claimed(RobotId robot) const { return claimed_[robot]; }
  double wake_time(RobotId robot) const { return wake_[robot]; }
  const WakeUpTree& tree() const { return tree_; }
  WakeUpTree take() { return std::move(tree_); }
  bool complete() const;

 private:
  const Instance& instance_;
  WakeUpTree tree_;
  std::vector<char> claimed_;
  std::vector<double> wake_;
};

}  // namespace freezetag
