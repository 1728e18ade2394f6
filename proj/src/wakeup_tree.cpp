#include "freezetag/wakeup_tree.hpp"

#include <algorithm>
#include <string>

namespace freezetag {

WakeUpTree::WakeUpTree(std::size_t robots) : parent_(robots, kNoRobot), children_(robots) {}

WakeUpTree WakeUpTree::from_parents(std::span<const RobotId> parents) {
  WakeUpTree tree(parents.size());
  for (std::size_t r = 0; r < parents.size(); ++r) {
    const RobotId p = parents[r];
    tree.parent_[r] = p;
    if (p >= 0 && static_cast<std::size_t>(p) < parents.size()) tree.children_[p].push_back(static_cast<RobotId>(r));
  }
  return tree;
}

void WakeUpTree::attach(RobotId parent, RobotId child) {
  parent_[child] = parent;
  children_[parent].push_back(child);
}

void WakeUpTree::make_first_child(RobotId child) {
  auto& siblings = children_[parent_[child]];
  auto it = std::find(siblings.begin(), siblings.end(), child);
  if (it != siblings.end()) std::rotate(siblings.begin(), it, it + 1);
}

std::vector<Violation> validate_rooted_spanning(const WakeUpTree& tree) {
  std::vector<Violation> out;
  const auto n = static_cast<RobotId>(tree.size());
  if (n == 0) {
    out.push_back({-1, "tree is empty"});
    return out;
  }
  if (tree.parent(0) != kNoRobot) out.push_back({0, "root has a parent"});
  for (RobotId r = 0; r < n; ++r) {
    const RobotId p = tree.parent(r);
    if (r != 0 && p == kNoRobot) out.push_back({r, "disconnected: robot has no parent"});
    if (p != kNoRobot && (p < 0 || p >= n)) out.push_back({r, "unknown parent robot " + std::to_string(p)});
    for (RobotId c : tree.children(r)) {
      if (c < 0 || c >= n) {
        out.push_back({r, "unknown child robot " + std::to_string(c)});
      } else if (tree.parent(c) != r) {
        out.push_back({c, "parent/children lists disagree"});
      }
    }
  }
  if (!out.empty()) return out;
  // Every robot must reach the root without cycling.
  enum : char { kUnknown, kOnChain, kReaches, kStranded };
  std::vector<char> state(n, kUnknown);
  state[0] = kReaches;
  for (RobotId r = 0; r < n; ++r) {
    std::vector<RobotId> chain;
    RobotId cur = r;
    while (cur != kNoRobot && state[cur] == kUnknown) {
      state[cur] = kOnChain;
      chain.push_back(cur);
      cur = tree.parent(cur);
    }
    const bool ok = cur != kNoRobot && state[cur] == kReaches;
    for (RobotId c : chain) {
      state[c] = ok ? kReaches : kStranded;
      if (!ok) out.push_back({c, "disconnected: robot does not reach the root"});
    }
  }
  return out;
}

std::vector<Violation> validate_tree(const Instance& instance, const WakeUpTree& tree) {
  std::vector<Violation> out;
  if (tree.size() != instance.robot_count()) {
    out.push_back({-1, "tree covers " + std::to_string(tree.size()) + " robots, instance has " +
                           std::to_string(instance.robot_count())});
    return out;
  }
  out = validate_rooted_spanning(tree);
  if (!tree.children(0).empty() && tree.children(0).size() > 1)
    out.push_back({0, "root out-degree > 1"});
  for (RobotId r = 1; r < static_cast<RobotId>(tree.size()); ++r)
    if (tree.children(r).size() > 2) out.push_back({r, "binary bound exceeded"});
  return out;
}

std::vector<RobotId> preorder(const WakeUpTree& tree) {
  std::vector<RobotId> order;
  order.reserve(tree.size());
  if (tree.size() == 0) return order;
  std::vector<RobotId> stack{0};
  while (!stack.empty()) {
    RobotId r = stack.back();
    stack.pop_back();
    order.push_back(r);
    const auto& ch = tree.children(r);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<double> wake_times(const Instance& instance, const WakeUpTree& tree) {
  auto violations = validate_tree(instance, tree);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  std::vector<double> wake(tree.size(), 0.0);
  for (RobotId r : preorder(tree))
    if (r != 0) wake[r] = wake[tree.parent(r)] + instance.distance(tree.parent(r), r);
  return wake;
}

double evaluate_makespan(const Instance& instance, const WakeUpTree& tree) {
  auto wake = wake_times(instance, tree);
  return wake.empty() ? 0.0 : *std::max_element(wake.begin(), wake.end());
}

std::size_t max_path_nodes(const WakeUpTree& tree) {
  if (tree.size() == 0) return 0;
  std::vector<std::size_t> depth(tree.size(), 1);
  std::size_t best = 1;
  for (RobotId r : preorder(tree)) {
    if (r != 0) depth[r] = depth[tree.parent(r)] + 1;
    best = std::max(best, depth[r]);
  }
  return best;
}

namespace {

// Robot travelling along each tree edge: arriver[v] is the robot that woke v.
std::vector<RobotId> arrivers(const WakeUpTree& tree) {
  std::vector<RobotId> arriver(tree.size(), kNoRobot);
  for (RobotId v : preorder(tree)) {
    const auto& ch = tree.children(v);
    if (v == 0) {
      if (!ch.empty()) arriver[ch[0]] = 0;
      continue;
    }
    if (!ch.empty()) arriver[ch[0]] = v;
    if (ch.size() > 1) arriver[ch[1]] = arriver[v];
  }
  return arriver;
}

}  // namespace

std::vector<double> completion_times(const Instance& instance, const WakeUpTree& tree) {
  const auto wake = wake_times(instance, tree);
  const auto arriver = arrivers(tree);
  std::vector<double> done(tree.size(), 0.0);
  for (RobotId v : preorder(tree)) {
    const auto& ch = tree.children(v);
    if (v == 0) {
      if (ch.empty()) done[0] = 0.0;
      continue;
    }
    if (ch.empty()) done[v] = wake[v];
    if (ch.size() < 2) done[arriver[v]] = wake[v];
  }
  return done;
}

double average_completion_time(const Instance& instance, const WakeUpTree& tree) {
  const auto done = completion_times(instance, tree);
  double sum = 0.0;
  for (double c : done) sum += c;
  return done.empty() ? 0.0 : sum / static_cast<double>(done.size());
}

Schedule build_schedule(const Instance& instance, const WakeUpTree& tree) {
  const auto wake = wake_times(instance, tree);
  const auto arriver = arrivers(tree);
  Schedule schedule;
  for (RobotId r = 1; r < static_cast<RobotId>(tree.size()); ++r) {
    const RobotId p = tree.parent(r);
    schedule.events.push_back({wake[r], arriver[r], r, p, instance.site_of(p), instance.site_of(r)});
  }
  std::sort(schedule.events.begin(), schedule.events.end(), [](const auto& a, const auto& b) {
    return a.time != b.time ? a.time < b.time : a.woken < b.woken;
  });
  for (double w : wake) schedule.makespan = std::max(schedule.makespan, w);
  return schedule;
}

WakeUpTree tree_from_schedule(std::size_t robots, const Schedule& schedule) {
  std::vector<RobotId> parents(robots, kNoRobot);
  // Children keep the order implied by the wakers: the node's own robot first.
  std::vector<ScheduleEvent> events = schedule.events;
  std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    const bool a_own = a.waker == a.parent, b_own = b.waker == b.parent;
    return a_own && !b_own;
  });
  WakeUpTree tree(robots);
  for (const auto& e : events) {
    if (e.woken < 0 || static_cast<std::size_t>(e.woken) >= robots) throw ValidationError(e.woken, "unknown robot in schedule");
    if (e.parent < 0 || static_cast<std::size_t>(e.parent) >= robots) throw ValidationError(e.woken, "unknown parent in schedule");
    if (tree.parent(e.woken) != kNoRobot) throw ValidationError(e.woken, "robot woken twice");
    tree.attach(e.parent, e.woken);
  }
  return tree;
}

LowerBounds lower_bounds(const Instance& instance) {
  LowerBounds lb;
  const auto sites = static_cast<SiteId>(instance.site_count());
  for (SiteId s = 0; s < sites; ++s) {
    lb.max_distance_from_source = std::max(lb.max_distance_from_source, instance.site_distance(0, s));
    for (SiteId t = s + 1; t < sites; ++t)
      lb.half_diameter = std::max(lb.half_diameter, instance.site_distance(s, t) / 2.0);
  }
  return lb;
}

TreeBuilder::TreeBuilder(const Instance& instance)
    : instance_(instance),
      tree_(instance.robot_count()),
      claimed_(instance.robot_count(), 0),
      wake_(instance.robot_count(), 0.0) {
  if (!claimed_.empty()) claimed_[0] = 1;
}

std::pair<TreeBuilder::Slot, TreeBuilder::Slot> TreeBuilder::claim(const Slot& slot, RobotId target) {
  if (claimed_[target]) throw Error("robot " + std::to_string(target) + " claimed twice");
  claimed_[target] = 1;
  wake_[target] = wake_[slot.node] + instance_.distance(slot.node, target);
  tree_.attach(slot.node, target);
  if (slot.robot == slot.node) tree_.make_first_child(target);
  return {Slot{target, slot.robot, wake_[target]}, Slot{target, target, wake_[target]}};
}

std::vector<TreeBuilder::Slot> TreeBuilder::cascade_here(const Slot& slot, std::span<const RobotId> colocated) {
  std::vector<Slot> slots{slot};
  std::size_t next = 0;
  for (RobotId r : colocated) {
    const Slot from = slots[next++];
    auto [a, b] = claim(from, r);
    slots.push_back(a);
    slots.push_back(b);
  }
  slots.erase(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(next));
  return slots;
}

std::vector<TreeBuilder::Slot> TreeBuilder::claim_site(const Slot& slot, std::span<const RobotId> colocated) {
  if (colocated.empty()) return {slot};
  auto [a, b] = claim(slot, colocated.front());
  std::vector<Slot> slots{a, b};
  std::size_t next = 0;
  for (RobotId r : colocated.subspan(1)) {
    const Slot from = slots[next++];
    auto [c, d] = claim(from, r);
    slots.push_back(c);
    slots.push_back(d);
  }
  slots.erase(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(next));
  return slots;
}

bool TreeBuilder::complete() const {
  return std::all_of(claimed_.begin(), claimed_.end(), [](char c) { return c != 0; });
}

}  // namespace freezetag
