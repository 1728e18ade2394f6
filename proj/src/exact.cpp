#include "freezetag/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freezetag/errors.hpp"

namespace freezetag::exact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprove = 1e-12;

// Sites that can be swapped by a metric automorphism fixing everything else.
std::vector<int> twin_classes(const Instance& inst) {
  const auto sites = static_cast<SiteId>(inst.site_count());
  std::vector<int> cls(sites, -1);
  for (SiteId a = 1; a < sites; ++a) {
    if (cls[a] >= 0) continue;
    for (SiteId b = a + 1; b < sites; ++b) {
      if (cls[b] >= 0 || inst.robots_at_site(a) != inst.robots_at_site(b)) continue;
      bool twin = true;
      for (SiteId x = 0; x < sites && twin; ++x) {
        if (x == a || x == b) continue;
        const double da = inst.site_distance(a, x), db = inst.site_distance(b, x);
        twin = std::abs(da - db) <= 1e-12 * std::max(1.0, std::abs(da));
      }
      if (twin) {
        cls[a] = a;
        cls[b] = a;
      }
    }
  }
  return cls;
}

class Search {
 public:
  Search(const Instance& inst, const Limits& limits, bool nondecreasing)
      : inst_(inst),
        limits_(limits),
        nondecreasing_(nondecreasing),
        n_(static_cast<int>(inst.robot_count())),
        sites_(static_cast<int>(inst.site_count())),
        twin_(twin_classes(inst)),
        unclaimed_(sites_),
        parent_(n_, kNoRobot),
        seen_class_(sites_, 0),
        start_(std::chrono::steady_clock::now()) {
    for (SiteId s = 0; s < sites_; ++s) unclaimed_[s] = inst.robots_at_site(s);
    unclaimed_[0] -= 1;  // the source is awake
    remaining_ = n_ - 1;
    if (nondecreasing_) {
      spoke_length_.assign(sites_, 0.0);
      for (SiteId s = 1; s < sites_; ++s) spoke_length_[s] = inst.site_distance(0, s);
    }
    agents_.push_back({0.0, 0, 0, 0});
  }

  Result run() {
    dfs(0.0);
    Result result;
    result.nodes = nodes_;
    result.optimal = !timed_out_;
    if (best_parent_.empty()) {
      if (n_ == 1) best_parent_.assign(1, kNoRobot), best_ = 0.0;
      else throw CapacityError("exact search found no schedule within the time budget");
    }
    result.tree = WakeUpTree::from_parents(best_parent_);
    result.makespan = best_;
    return result;
  }

 private:
  struct Agent {
    double time;
    RobotId robot;
    SiteId site;
    RobotId node;
  };

  struct Candidate {
    double arrival;
    SiteId site;
  };

  RobotId next_unclaimed(SiteId s) const {
    return inst_.first_robot_at(s) + (inst_.robots_at_site(s) - unclaimed_[s]);
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() - start_ > limits_.time_budget) timed_out_ = true;
    return timed_out_;
  }

  double lower_bound(double makespan) const {
    double lb = makespan;
    for (SiteId s = 0; s < sites_; ++s) {
      if (unclaimed_[s] == 0) continue;
      double reach = kInf;
      for (const auto& a : agents_) reach = std::min(reach, a.time + inst_.site_distance(a.site, s));
      lb = std::max(lb, reach);
    }
    return lb;
  }

  void dfs(double makespan) {
    ++nodes_;
    if (out_of_time()) return;
    if (remaining_ == 0) {
      if (makespan < best_ - kImprove) {
        best_ = makespan;
        best_parent_ = parent_;
      }
      return;
    }
    if (agents_.empty()) return;

    std::size_t pick = 0;
    for (std::size_t i = 1; i < agents_.size(); ++i) {
      const auto& a = agents_[i];
      const auto& b = agents_[pick];
      if (a.time < b.time || (a.time == b.time && a.robot < b.robot)) pick = i;
    }
    const Agent agent = agents_[pick];

    std::vector<Candidate> candidates;
    if (unclaimed_[agent.site] > 0) {
      // Waking a colocated robot costs nothing and dominates every alternative.
      candidates.push_back({agent.time, agent.site});
    } else {
      std::fill(seen_class_.begin(), seen_class_.end(), 0);
      for (SiteId s = 0; s < sites_; ++s) {
        if (unclaimed_[s] == 0) continue;
        if (nondecreasing_ && agent.site != 0 && spoke_length_[s] < spoke_length_[agent.site]) continue;
        if (twin_[s] >= 0 && unclaimed_[s] == inst_.robots_at_site(s)) {
          if (seen_class_[twin_[s]]) continue;
          seen_class_[twin_[s]] = 1;
        }
        candidates.push_back({agent.time + inst_.site_distance(agent.site, s), s});
      }
      std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.arrival != b.arrival ? a.arrival < b.arrival : a.site < b.site;
      });
    }

    for (const auto& c : candidates) {
      const double next_makespan = std::max(makespan, c.arrival);
      if (next_makespan >= best_ - kImprove) break;
      const RobotId target = next_unclaimed(c.site);
      --unclaimed_[c.site];
      --remaining_;
      parent_[target] = agent.node;
      agents_[pick] = {c.arrival, agent.robot, c.site, target};
      agents_.push_back({c.arrival, target, c.site, target});

      if (lower_bound(next_makespan) < best_ - kImprove) dfs(next_makespan);

      agents_.pop_back();
      agents_[pick] = agent;
      parent_[target] = kNoRobot;
      ++remaining_;
      ++unclaimed_[c.site];
      if (timed_out_) return;
    }

    // The robot may also stop for good; a colocated wake never loses to that.
    if (unclaimed_[agent.site] > 0) return;
    agents_.erase(agents_.begin() + static_cast<std::ptrdiff_t>(pick));
    if (lower_bound(makespan) < best_ - kImprove) dfs(makespan);
    agents_.insert(agents_.begin() + static_cast<std::ptrdiff_t>(pick), agent);
  }

  const Instance& inst_;
  Limits limits_;
  bool nondecreasing_;
  int n_;
  int sites_;
  std::vector<int> twin_;
  std::vector<int> unclaimed_;
  std::vector<RobotId> parent_;
  std::vector<double> spoke_length_;
  std::vector<char> seen_class_;
  std::vector<Agent> agents_;
  int remaining_ = 0;
  double best_ = kInf;
  std::vector<RobotId> best_parent_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  std::chrono::steady_clock::time_point start_;
};

void check_capacity(const Instance& instance, const Limits& limits) {
  if (instance.robot_count() > limits.max_robots)
    throw CapacityError("exact solver: instance has " + std::to_string(instance.robot_count()) +
                        " robots, limit is " + std::to_string(limits.max_robots));
}

}  // namespace

Result solve_optimal(const Instance& instance, const Limits& limits) {
  check_capacity(instance, limits);
  return Search(instance, limits, false).run();
}

Result solve_optimal_equal_star(const Instance& star, const Limits& limits) {
  if (star.kind() != InstanceKind::Star) throw PreconditionError("solve_optimal_equal_star needs a star instance");
  if (!star.has_uniform_spokes()) throw PreconditionError("solve_optimal_equal_star needs equal robot counts per leaf");
  check_capacity(star, limits);
  return Search(star, limits, true).run();
}

}  // namespace freezetag::exact
