#include "freezetag/stars.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "freezetag/errors.hpp"

namespace freezetag::stars {

SpokeBoard::SpokeBoard(const StarData& star)
    : spokes_(star.spokes), claimed_(star.spokes.size(), 0), unclaimed_(star.spokes.size()) {}

std::optional<std::size_t> SpokeBoard::shortest_unclaimed() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < spokes_.size(); ++i) {
    if (claimed_[i]) continue;
    if (!best || spokes_[i].length < spokes_[*best].length ||
        (spokes_[i].length == spokes_[*best].length && spokes_[i].robots > spokes_[*best].robots))
      best = i;
  }
  return best;
}

std::optional<std::size_t> SpokeBoard::most_populous_unclaimed() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < spokes_.size(); ++i)
    if (!claimed_[i] && (!best || spokes_[i].robots > spokes_[*best].robots)) best = i;
  return best;
}

void SpokeBoard::claim(std::size_t spoke) {
  if (claimed_[spoke]) throw Error("spoke " + std::to_string(spoke) + " claimed twice");
  claimed_[spoke] = 1;
  --unclaimed_;
}

namespace {

using Slot = TreeBuilder::Slot;

std::vector<RobotId> robots_on_spoke(const Instance& star, std::size_t spoke) {
  const SiteId site = static_cast<SiteId>(spoke) + 1;
  std::vector<RobotId> out(star.robots_at_site(site));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = star.first_robot_at(site) + static_cast<RobotId>(k);
  return out;
}

struct CenterArrival {
  double time;
  RobotId robot;
  Slot slot;
  bool operator>(const CenterArrival& o) const { return time != o.time ? time > o.time : robot > o.robot; }
};

using ArrivalQueue = std::priority_queue<CenterArrival, std::vector<CenterArrival>, std::greater<>>;

double spoke_length_of(const Instance& star, RobotId node) {
  return star.site_distance(0, star.site_of(node));
}

void push_slots(ArrivalQueue& queue, const Instance& star, const std::vector<Slot>& slots) {
  for (const auto& s : slots) queue.push({s.time + spoke_length_of(star, s.node), s.robot, s});
}

void require_star(const Instance& inst, const char* who) {
  if (inst.kind() != InstanceKind::Star) throw PreconditionError(std::string(who) + " needs a star instance");
}

void require_uniform(const Instance& inst, const char* who) {
  require_star(inst, who);
  if (!inst.has_uniform_spokes())
    throw PreconditionError(std::string(who) + " needs the same number of robots on every leaf");
}

// Repeated-doubling pointer: next class to try, restarting from the smallest when exhausted.
std::optional<std::size_t> doubling_step(const std::vector<LengthClass>& classes, const SpokeBoard& board,
                                         int& pointer) {
  const LengthClass* wrap = nullptr;
  for (const auto& cls : classes) {
    auto it = std::find_if(cls.spokes.begin(), cls.spokes.end(), [&](std::size_t s) { return !board.claimed(s); });
    if (it == cls.spokes.end()) continue;
    if (!wrap) wrap = &cls;
    if (cls.index >= pointer) {
      pointer = cls.index + 1;
      return *it;
    }
  }
  if (!wrap) return std::nullopt;
  pointer = wrap->index + 1;
  return *std::find_if(wrap->spokes.begin(), wrap->spokes.end(), [&](std::size_t s) { return !board.claimed(s); });
}

}  // namespace

WakeUpTree dispatch_from_center(const Instance& star, const CenterPolicy& policy) {
  require_star(star, "dispatch_from_center");
  TreeBuilder builder(star);
  SpokeBoard board(star.star_data());
  ArrivalQueue queue;
  queue.push({0.0, 0, builder.root_slot()});
  while (!queue.empty() && !board.exhausted()) {
    const CenterArrival next = queue.top();
    queue.pop();
    const auto spoke = policy(next.time, next.robot, board);
    if (!spoke) continue;
    board.claim(*spoke);
    const auto robots = robots_on_spoke(star, *spoke);
    push_slots(queue, star, builder.claim_site(next.slot, robots));
  }
  if (!board.exhausted()) throw Error("star policy left spokes unclaimed");
  return builder.take();
}

WakeUpTree unit_star_greedy(const Instance& star) {
  require_star(star, "unit_star_greedy");
  if (!star.has_equal_lengths()) throw PreconditionError("unit_star_greedy needs equal spoke lengths");
  return dispatch_from_center(star, [](double, RobotId, const SpokeBoard& board) {
    return board.most_populous_unclaimed();
  });
}

WakeUpTree sef(const Instance& star) {
  require_uniform(star, "sef");
  return dispatch_from_center(star, [](double, RobotId, const SpokeBoard& board) {
    return board.shortest_unclaimed();
  });
}

double sef_average_completion(const Instance& star) {
  return average_completion_time(star, sef(star));
}

int length_class(double length) {
  int exponent = 0;
  const double mantissa = std::frexp(length, &exponent);  // length = mantissa * 2^exponent, mantissa in [0.5, 1)
  return mantissa == 0.5 ? exponent - 1 : exponent;
}

std::vector<LengthClass> length_classes(const StarData& star) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < star.spokes.size(); ++i) by_class[length_class(star.spokes[i].length)].push_back(i);
  std::vector<LengthClass> out;
  for (auto& [index, spokes] : by_class) {
    std::stable_sort(spokes.begin(), spokes.end(),
                     [&](std::size_t a, std::size_t b) { return star.spokes[a].robots > star.spokes[b].robots; });
    out.push_back({index, std::move(spokes)});
  }
  return out;
}

WakeUpTree repeated_doubling(const Instance& star) {
  require_star(star, "repeated_doubling");
  const auto classes = length_classes(star.star_data());
  std::map<RobotId, int> pointer;
  return dispatch_from_center(star, [&](double, RobotId robot, const SpokeBoard& board) {
    auto [it, fresh] = pointer.try_emplace(robot, INT_MIN);
    return doubling_step(classes, board, it->second);
  });
}

WakeUpTree tag_team(const Instance& star) {
  require_star(star, "tag_team");
  const auto classes = length_classes(star.star_data());
  struct State {
    int pointer = INT_MIN;
    bool shortest_next = true;
  };
  std::map<RobotId, State> state;
  return dispatch_from_center(star, [&](double, RobotId robot, const SpokeBoard& board) {
    auto& s = state[robot];
    if (s.shortest_next) {
      s.shortest_next = false;
      return board.shortest_unclaimed();
    }
    s.shortest_next = true;
    return doubling_step(classes, board, s.pointer);
  });
}

// ---------------------------------------------------------------------------
// PTAS for stars with equal robot counts.

namespace {

struct LongGroup {
  long units = 0;
  std::vector<std::size_t> spokes;  // ascending original length, then index
};

class StarPtas {
 public:
  StarPtas(const Instance& star, const PtasOptions& options) : star_(star), options_(options) {
    const auto& spokes = star.star_data().spokes;
    q_ = spokes.empty() ? 1 : spokes.front().robots;

    best_tree_ = sef(star);
    best_ = evaluate_makespan(star, best_tree_);
    config_.epsilon = options.epsilon;
    config_.lower_bound = 3.0 / 7.0 * best_;
    config_.short_threshold = options.epsilon * config_.lower_bound;
    config_.grid_unit = options.epsilon * options.epsilon * config_.lower_bound;

    std::map<long, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < spokes.size(); ++i) {
      if (spokes[i].length <= config_.short_threshold) {
        short_.push_back(i);
      } else {
        const long units = static_cast<long>(std::ceil(spokes[i].length / config_.grid_unit - 1e-9));
        groups[units].push_back(i);
        config_.long_spokes.push_back(i);
        config_.rounded_units.push_back(units);
      }
    }
    std::stable_sort(short_.begin(), short_.end(),
                     [&](std::size_t a, std::size_t b) { return spokes[a].length < spokes[b].length; });
    // Longest groups first: they claim parent capacity first at a shared start time.
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      auto members = it->second;
      std::stable_sort(members.begin(), members.end(),
                       [&](std::size_t a, std::size_t b) { return spokes[a].length < spokes[b].length; });
      groups_.push_back({it->first, std::move(members)});
    }
    long_count_ = static_cast<int>(config_.long_spokes.size());
    remaining_.resize(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) remaining_[g] = static_cast<int>(groups_[g].spokes.size());
    root_cap_ = 1 + q_ * static_cast<int>(short_.size());
  }

  PtasResult run() {
    PtasResult result;
    if (long_count_ > 0) {
      std::vector<Placed> placed;
      enumerate(0, 0, placed);
    }
    result.tree = std::move(best_tree_);
    result.makespan = best_;
    result.config = config_;
    result.configurations = configurations_;
    result.greedy_won = config_.start_units.empty();
    return result;
  }

 private:
  struct Placed {
    std::size_t spoke;
    long units;
    long start;
    int parent = -1;  // index into placed, -1 for a subtree root
  };

  struct Offer {
    int edge;  // index into placed
    long time;
    int capacity;
  };

  double grid() const { return config_.grid_unit; }

  bool fits(long start, long units) const { return static_cast<double>(start + units) * grid() < best_ - 1e-12; }

  // Chooses how many edges of group `g` start at time `start`; groups then advance the clock.
  void enumerate(long start, std::size_t g, std::vector<Placed>& placed) {
    if (static_cast<int>(placed.size()) == long_count_) {
      simulate(placed);
      return;
    }
    if (g == groups_.size()) {
      finish_time(start, placed);
      return;
    }
    // A group whose remaining edges cannot start now can never start later either.
    if (remaining_[g] > 0 && !fits(start, groups_[g].units)) return;
    const int available = remaining_[g];
    for (int take = 0; take <= available; ++take) {
      if (take > 0 && !fits(start, groups_[g].units)) break;
      for (int k = 0; k < take; ++k) {
        const std::size_t spoke = groups_[g].spokes[groups_[g].spokes.size() - remaining_[g]];
        placed.push_back({spoke, groups_[g].units, start});
        --remaining_[g];
      }
      enumerate(start, g + 1, placed);
      for (int k = 0; k < take; ++k) {
        placed.pop_back();
        ++remaining_[g];
      }
    }
  }

  // Assigns the edges that start at `start` to parents with matching child slots, then moves on.
  void finish_time(long start, std::vector<Placed>& placed) {
    std::size_t first = placed.size();
    while (first > 0 && placed[first - 1].start == start) --first;
    std::vector<std::pair<std::size_t, int>> used;  // offer index, taken
    int roots = 0;
    std::size_t edge = first;
    for (std::size_t o = 0; o < offers_.size() && edge < placed.size(); ++o) {
      if (offers_[o].time != start) continue;
      int taken = 0;
      while (taken < offers_[o].capacity && edge < placed.size()) {
        placed[edge++].parent = offers_[o].edge;
        ++taken;
      }
      used.emplace_back(o, taken);
    }
    roots = static_cast<int>(placed.size() - edge);
    roots_ += roots;
    const std::size_t offers_before = offers_.size();
    if (roots_ <= root_cap_) {
      for (std::size_t e = first; e < placed.size(); ++e)
        offers_.push_back({static_cast<int>(e), placed[e].start + 2 * placed[e].units, q_ + 1});
      if (++nodes_ > options_.max_configurations) budget_exceeded();
      enumerate(start + 1, 0, placed);
    }
    offers_.resize(offers_before);
    roots_ -= roots;
    for (std::size_t e = first; e < placed.size(); ++e) placed[e].parent = -1;
  }

  [[noreturn]] void budget_exceeded() const {
    throw CapacityError("star_ptas: enumeration exceeded " + std::to_string(options_.max_configurations) +
                        " configurations (the scheme enumerates n^O(1/eps^4) start-time vectors)");
  }

  // Runs the generalized greedy for one complete start-time vector.
  void simulate(const std::vector<Placed>& placed) {
    if (++configurations_ > options_.max_configurations) budget_exceeded();
    std::vector<std::vector<int>> children(placed.size());
    std::vector<int> roots;
    for (std::size_t e = 0; e < placed.size(); ++e) {
      if (placed[e].parent >= 0) children[placed[e].parent].push_back(static_cast<int>(e));
      else roots.push_back(static_cast<int>(e));
    }
    // Placement order is nondecreasing in start time already.
    const double window = 2.0 * config_.short_threshold;

    TreeBuilder builder(star_);
    ArrivalQueue queue;
    queue.push({0.0, 0, builder.root_slot()});
    std::size_t next_short = 0;
    std::size_t next_root = 0;
    const auto& spokes = star_.star_data().spokes;

    auto send_subtree = [&](const Slot& slot, int root) {
      std::vector<std::pair<Slot, int>> stack{{slot, root}};
      while (!stack.empty()) {
        auto [s, e] = stack.back();
        stack.pop_back();
        const auto robots = robots_on_spoke(star_, placed[e].spoke);
        auto slots = builder.claim_site(s, robots);
        for (std::size_t k = 0; k < children[e].size(); ++k) stack.emplace_back(slots[k], children[e][k]);
      }
    };

    while (!queue.empty()) {
      const CenterArrival next = queue.top();
      queue.pop();
      const double t = next.time;
      if (next_root < roots.size() &&
          t >= static_cast<double>(placed[roots[next_root]].start) * grid() + window - 1e-12) {
        send_subtree(next.slot, roots[next_root++]);
      } else if (next_short < short_.size()) {
        const std::size_t spoke = short_[next_short++];
        auto slots = builder.claim_site(next.slot, robots_on_spoke(star_, spoke));
        for (const auto& s : slots) queue.push({s.time + spokes[spoke].length, s.robot, s});
      } else if (next_root < roots.size()) {
        send_subtree(next.slot, roots[next_root++]);
      }
    }
    if (next_root < roots.size() || next_short < short_.size()) return;  // infeasible guess

    WakeUpTree tree = builder.take();
    const double makespan = evaluate_makespan(star_, tree);
    if (makespan < best_ - 1e-12) {
      best_ = makespan;
      best_tree_ = std::move(tree);
      config_.start_units.assign(config_.long_spokes.size(), 0);
      for (const auto& p : placed) {
        auto it = std::find(config_.long_spokes.begin(), config_.long_spokes.end(), p.spoke);
        config_.start_units[static_cast<std::size_t>(it - config_.long_spokes.begin())] = p.start;
      }
    }
  }

  const Instance& star_;
  PtasOptions options_;
  int q_ = 1;
  PtasConfig config_;
  std::vector<std::size_t> short_;
  std::vector<LongGroup> groups_;
  std::vector<int> remaining_;
  std::vector<Offer> offers_;
  int long_count_ = 0;
  int roots_ = 0;
  int root_cap_ = 1;
  double best_ = 0.0;
  WakeUpTree best_tree_;
  std::uint64_t configurations_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

PtasResult star_ptas(const Instance& star, const PtasOptions& options) {
  require_uniform(star, "star_ptas");
  if (!(options.epsilon > 0.0) || options.epsilon > 1.0)
    throw ParameterError("star_ptas: epsilon must lie in (0, 1]");
  if (options.epsilon < 0.2 && !options.allow_small_epsilon)
    throw ParameterError("star_ptas: epsilon below 0.2 needs allow_small_epsilon");
  return StarPtas(star, options).run();
}

}  // namespace freezetag::stars
