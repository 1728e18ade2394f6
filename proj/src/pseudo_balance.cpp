#include "freezetag/pseudo_balance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "freezetag/errors.hpp"

namespace freezetag {

HeavyPathDecomposition heavy_path_decomposition(const WakeUpTree& tree) {
  auto violations = validate_rooted_spanning(tree);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const std::size_t n = tree.size();
  HeavyPathDecomposition hpd;
  hpd.heavy_child.assign(n, kNoRobot);
  hpd.subtree_size.assign(n, 1);
  hpd.path_of.assign(n, -1);

  const auto order = preorder(tree);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const RobotId v = *it;
    RobotId best = kNoRobot;
    for (RobotId c : tree.children(v)) {
      hpd.subtree_size[v] += hpd.subtree_size[c];
      if (best == kNoRobot || hpd.subtree_size[c] > hpd.subtree_size[best] ||
          (hpd.subtree_size[c] == hpd.subtree_size[best] && c < best))
        best = c;
    }
    hpd.heavy_child[v] = best;
  }

  // Heads in preorder give the root's path first and parents before children.
  for (RobotId v : order) {
    const RobotId p = tree.parent(v);
    if (p != kNoRobot && hpd.heavy_child[p] == v) continue;
    if (p != kNoRobot) hpd.light_edges.emplace_back(p, v);
    std::vector<RobotId> path;
    for (RobotId cur = v; cur != kNoRobot; cur = hpd.heavy_child[cur]) {
      hpd.path_of[cur] = static_cast<int>(hpd.paths.size());
      path.push_back(cur);
    }
    hpd.paths.push_back(std::move(path));
  }
  return hpd;
}

int max_light_edges_on_path(const WakeUpTree& tree, const HeavyPathDecomposition& hpd) {
  std::vector<int> light(tree.size(), 0);
  int best = 0;
  for (RobotId v : preorder(tree)) {
    const RobotId p = tree.parent(v);
    if (p != kNoRobot) light[v] = light[p] + (hpd.heavy_child[p] == v ? 0 : 1);
    best = std::max(best, light[v]);
  }
  return best;
}

double pseudo_balance_node_bound(std::size_t robots, double mu) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(robots, 1)));
  return kPseudoBalanceConstant * (1.0 + 1.0 / mu) * lg * lg;
}

namespace {

using Slot = TreeBuilder::Slot;

// Wakes window[lo..hi] by median splits starting from `slot`; free slots are appended to `free`.
void cascade_window(TreeBuilder& builder, const std::vector<RobotId>& window, int lo, int hi, const Slot& slot,
                    std::vector<Slot>& free) {
  if (lo > hi) {
    free.push_back(slot);
    return;
  }
  const int mid = lo + (hi - lo) / 2;
  auto [a, b] = builder.claim(slot, window[mid]);
  cascade_window(builder, window, lo, mid - 1, a, free);
  cascade_window(builder, window, mid + 1, hi, b, free);
}

}  // namespace

WakeUpTree pseudo_balance(const Instance& instance, const WakeUpTree& tree, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("pseudo_balance: mu must be positive");
  const auto wake = wake_times(instance, tree);  // validates
  const std::size_t n = tree.size();
  if (n < 2) return tree;
  const double lg = std::log2(static_cast<double>(n));
  if (static_cast<double>(max_path_nodes(tree)) <= kPseudoBalanceConstant * lg * lg) return tree;

  const double makespan = *std::max_element(wake.begin(), wake.end());
  const auto hpd = heavy_path_decomposition(tree);
  const int heavy_paths_per_walk = max_light_edges_on_path(tree, hpd) + 1;
  const int cascade_depth = static_cast<int>(std::ceil(lg)) + 1;
  // Each heavy path adds at most cascade_depth * xi of delay.
  const double xi = mu * makespan / (heavy_paths_per_walk * cascade_depth);

  // Remaining height below each node in the original tree, used to order light children.
  std::vector<double> height(n, 0.0);
  {
    const auto order = preorder(tree);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      for (RobotId c : tree.children(*it))
        height[*it] = std::max(height[*it], instance.distance(*it, c) + height[c]);
  }

  TreeBuilder builder(instance);
  std::deque<std::pair<Slot, RobotId>> pending;  // (slot that wakes the head, path head)

  // The root keeps its single child; the top heavy path then starts at that child.
  const RobotId top = tree.children(0).front();
  pending.emplace_back(builder.root_slot(), top);

  while (!pending.empty()) {
    auto [entry, head] = pending.front();
    pending.pop_front();
    const auto& path = hpd.paths[hpd.path_of[head]];
    const auto start = static_cast<std::size_t>(std::find(path.begin(), path.end(), head) - path.begin());

    // Split the path (from `head`) into windows of arc length xi.
    std::vector<std::vector<RobotId>> windows;
    double arc = 0.0;
    long current = -1;
    for (std::size_t i = start; i < path.size(); ++i) {
      if (i > start) arc += instance.distance(path[i - 1], path[i]);
      const long index = xi > 0.0 ? static_cast<long>(std::floor(arc / xi)) : 0;
      if (index != current) {
        windows.emplace_back();
        current = index;
      }
      windows.back().push_back(path[i]);
    }

    Slot chain = entry;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const auto& window = windows[w];
      auto [first, second] = builder.claim(chain, window.front());
      std::vector<Slot> free;
      if (w + 1 < windows.size()) {
        chain = first;
      } else {
        free.push_back(first);
      }
      cascade_window(builder, window, 1, static_cast<int>(window.size()) - 1, second, free);

      // Light children of this window, tallest first, each to the slot that reaches it soonest.
      std::vector<RobotId> lights;
      for (RobotId v : window)
        for (RobotId c : tree.children(v))
          if (hpd.heavy_child[v] != c) lights.push_back(c);
      std::sort(lights.begin(), lights.end(), [&](RobotId a, RobotId b) {
        const double ha = instance.distance(tree.parent(a), a) + height[a];
        const double hb = instance.distance(tree.parent(b), b) + height[b];
        return ha != hb ? ha > hb : a < b;
      });
      for (RobotId c : lights) {
        std::size_t pick = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < free.size(); ++k) {
          const double arrive = free[k].time + instance.distance(free[k].node, c);
          if (arrive < best) {
            best = arrive;
            pick = k;
          }
        }
        pending.emplace_back(free[pick], c);
        free.erase(free.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
  }
  return builder.take();
}

}  // namespace freezetag
