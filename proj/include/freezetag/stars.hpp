#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag::stars {

/// Claim state of the spokes, as seen by a robot standing at the center.
class SpokeBoard {
 public:
  explicit SpokeBoard(const StarData& star);

  std::size_t size() const { return spokes_.size(); }
  double length(std::size_t spoke) const { return spokes_[spoke].length; }
  int robots(std::size_t spoke) const { return spokes_[spoke].robots; }
  bool claimed(std::size_t spoke) const { return claimed_[spoke] != 0; }
  bool exhausted() const { return unclaimed_ == 0; }
  std::size_t unclaimed() const { return unclaimed_; }

  // Shortest unclaimed spoke; ties: most robots, then smaller index.
  std::optional<std::size_t> shortest_unclaimed() const;
  // Most populous unclaimed spoke; ties: smaller index.
  std::optional<std::size_t> most_populous_unclaimed() const;

  void claim(std::size_t spoke);

 private:
  const std::vector<Spoke>& spokes_;
  std::vector<char> claimed_;
  std::size_t unclaimed_;
};

// Decides which spoke a robot standing at the center claims next; nullopt makes it rest.
using CenterPolicy = std::function<std::optional<std::size_t>(double time, RobotId robot, const SpokeBoard& board)>;

/// Event-driven star simulation. Every awake robot returns to the center
/// after waking a leaf; robots at the center are served in (time, robot id)
/// order and the policy picks their next spoke. Waking a leaf wakes all its
/// robots at once.
WakeUpTree dispatch_from_center(const Instance& star, const CenterPolicy& policy);

// Optimal greedy for stars whose spokes all have the same length.
WakeUpTree unit_star_greedy(const Instance& star);

// Shortest-Edge-First. Requires the same robot count on every leaf.
WakeUpTree sef(const Instance& star);

// Average completion time (time each robot comes to rest) of the SEF schedule.
double sef_average_completion(const Instance& star);

// Power-of-two class of a length: ceil(log2(length)), exact for powers of two.
int length_class(double length);

struct LengthClass {
  int index = 0;                     // spokes round up to length 2^index
  std::vector<std::size_t> spokes;   // sorted by descending robot count, then index
};

std::vector<LengthClass> length_classes(const StarData& star);

// Repeated Doubling: each robot walks ascending length classes, claiming the
// most populous unclaimed spoke of each, and restarts when it runs out.
WakeUpTree repeated_doubling(const Instance& star);

// Tag-Team: Repeated Doubling with a Shortest-Edge-First claim before every doubling step.
WakeUpTree tag_team(const Instance& star);

struct PtasOptions {
  double epsilon = 0.25;
  // Accept epsilon below the desk-scale floor of 0.2.
  bool allow_small_epsilon = false;
  std::uint64_t max_configurations = 20'000'000;
};

struct PtasConfig {
  double epsilon = 0.0;
  double lower_bound = 0.0;       // T = 3/7 * SEF makespan
  double short_threshold = 0.0;   // epsilon * T
  double grid_unit = 0.0;         // epsilon^2 * T
  std::vector<std::size_t> long_spokes;
  std::vector<long> rounded_units;  // rounded long length / grid unit, per long spoke
  std::vector<long> start_units;    // chosen start time / grid unit, per long spoke (empty: greedy won)
};

struct PtasResult {
  WakeUpTree tree;
  double makespan = 0.0;
  PtasConfig config;
  std::uint64_t configurations = 0;  // complete start vectors simulated
  bool greedy_won = false;           // no enumerated configuration beat plain SEF
};

/// Constant in makespan <= (1 + C_ptas * epsilon) * optimum, measured on the
/// acceptance suite (see README).
inline constexpr double kPtasConstant = 2.0;

// Approximation scheme for stars with equal robot counts per leaf.
PtasResult star_ptas(const Instance& star, const PtasOptions& options = {});

}  // namespace freezetag::stars
