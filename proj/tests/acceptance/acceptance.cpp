// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "freezetag/exact.hpp"
#include "freezetag/families.hpp"
#include "freezetag/geometry.hpp"
#include "freezetag/graphs.hpp"
#include "freezetag/pseudo_balance.hpp"
#include "freezetag/stars.hpp"
#include "oracles.hpp"
#include "suites.hpp"

namespace ft = freezetag;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTol = 1e-9;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Every solver output seen by the suites is checked here for criterion 13.
struct OutputAudit {
  int checked = 0;
  int failures = 0;
  std::string first_failure;

  double check(const ft::Instance& inst, const ft::WakeUpTree& tree, const std::string& who) {
    ++checked;
    const auto problems = ft::validate_tree(inst, tree);
    if (!problems.empty()) {
      note(who + ": " + problems.front().message);
      return 0.0;
    }
    const double makespan = ft::evaluate_makespan(inst, tree);
    if (makespan < ft::lower_bounds(inst).best() - kTol) note(who + ": makespan below a lower bound");
    return makespan;
  }

  void note(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

OutputAudit audit;

double optimum(const ft::Instance& inst) {
  ft::exact::Limits limits;
  limits.max_robots = std::max<std::size_t>(limits.max_robots, inst.robot_count());
  const auto r = ft::exact::solve_optimal(inst, limits);
  audit.check(inst, r.tree, "exact");
  return r.makespan;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few violations of a criterion.
struct Failures {
  int count = 0;
  std::ostringstream text;
  void add(const std::string& what) {
    if (count++ < 3) text << " [" << what << "]";
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome criterion1() {
  const auto start = Clock::now();
  const auto star = ft::Instance::star({{1, 1}, {1, 1}, {1, 1}, {100, 1}});
  const double opt = optimum(star);
  const double sef = audit.check(star, ft::stars::sef(star), "sef");
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(opt - 102.0) <= kTol && std::abs(sef - 104.0) <= kTol && elapsed < 1.0;
  return {pass, "exact " + fmt(opt) + ", sef " + fmt(sef) + ", " + fmt(elapsed) + " s"};
}

Outcome criterion2() {
  Failures f;
  std::string detail;
  double previous = 0.0;
  for (int k : {2, 3, 4}) {
    const auto star = ft::families::sef_tight(k);
    const double sef = audit.check(star, ft::stars::sef(star), "sef");
    if (std::abs(sef - 7.0 * k) > kTol) f.add("k=" + std::to_string(k) + " sef " + fmt(sef));
    double reference;
    if (k == 2) {
      reference = optimum(star);
    } else {
      const auto tree = ft::stars::dispatch_from_center(star, ft::testing::tight_family_policy(k));
      reference = audit.check(star, tree, "reference schedule");
      if (reference > 3.0 * k + 4.0 + kTol) f.add("k=" + std::to_string(k) + " reference schedule " + fmt(reference));
    }
    const double ratio = sef / reference;
    if (ratio < 7.0 * k / (3.0 * k + 4.0) - kTol) f.add("k=" + std::to_string(k) + " ratio " + fmt(ratio));
    if (ratio < previous - kTol) f.add("ratio decreased at k=" + std::to_string(k));
    previous = ratio;
    detail += " k=" + std::to_string(k) + ":" + fmt(ratio);
  }
  return {f.count == 0, "ratios" + detail + f.text.str()};
}

Outcome criterion3() {
  const auto start = Clock::now();
  ft::families::Rng rng(3);
  Failures f;
  int averages = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto star = ft::testing::random_small_star(rng, 9, true);
    const double opt = optimum(star);
    const double sef = audit.check(star, ft::stars::sef(star), "sef");
    double lmax = 0.0;
    for (const auto& s : star.star_data().spokes) lmax = std::max(lmax, s.length);
    worst = std::max(worst, sef / opt);
    if (sef > 7.0 / 3.0 * opt + kTol) f.add("7/3 bound on star " + std::to_string(i));
    if (sef > opt + 2.0 * lmax + kTol) f.add("additive bound on star " + std::to_string(i));
    if (star.robot_count() <= 6) {
      ++averages;
      const double avg = ft::stars::sef_average_completion(star);
      const double best = ft::testing::rational_min_average_completion(star);
      if (std::abs(avg - best) > kTol) f.add("average " + fmt(avg) + " vs " + fmt(best));
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 120.0) f.add("runtime " + fmt(elapsed) + " s");
  return {f.count == 0, "500 stars, max sef/opt " + fmt(worst) + ", " + std::to_string(averages) +
                            " averages checked, " + fmt(elapsed) + " s" + f.text.str()};
}

Outcome criterion4() {
  ft::families::Rng rng(4);
  Failures f;
  for (int i = 0; i < 200; ++i) {
    const auto star = ft::testing::random_equal_length_star(rng, 9);
    const double greedy = audit.check(star, ft::stars::unit_star_greedy(star), "unit-greedy");
    const double opt = optimum(star);
    if (std::abs(greedy - opt) > kTol) f.add("star " + std::to_string(i) + ": " + fmt(greedy) + " vs " + fmt(opt));
  }
  return {f.count == 0, "200 equal-length stars" + f.text.str()};
}

Outcome criterion5() {
  ft::families::Rng rng(5);
  Failures f;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const auto star = ft::testing::random_small_star(rng, 9, i % 2 == 0);
    const double tt = audit.check(star, ft::stars::tag_team(star), "tag-team");
    const double opt = optimum(star);
    worst = std::max(worst, tt / opt);
    if (tt > 14.0 * opt + kTol) f.add("star " + std::to_string(i));
  }
  return {f.count == 0, "300 stars, max ratio " + fmt(worst) + f.text.str()};
}

Outcome criterion6() {
  ft::families::Rng rng(6);
  Failures f;
  double worst = 0.0;
  const double bound = 1.0 + ft::stars::kPtasConstant * 0.25;
  for (int i = 0; i < 200; ++i) {
    const auto star = ft::testing::random_small_star(rng, 9, true);
    const auto r = ft::stars::star_ptas(star);
    audit.check(star, r.tree, "star-ptas");
    const double opt = optimum(star);
    worst = std::max(worst, r.makespan / opt);
    if (r.makespan < opt - kTol) f.add("below the optimum on star " + std::to_string(i));
    if (r.makespan > bound * opt + kTol) f.add("above the bound on star " + std::to_string(i));
  }
  const auto long_spoke = ft::Instance::star({{1, 1}, {1, 1}, {1, 1}, {100, 1}});
  const auto r = ft::stars::star_ptas(long_spoke);
  audit.check(long_spoke, r.tree, "star-ptas");
  if (r.makespan > ft::evaluate_makespan(long_spoke, ft::stars::sef(long_spoke)) + kTol)
    f.add("long-spoke star " + fmt(r.makespan));
  return {f.count == 0, "200 stars, max ratio " + fmt(worst) + " vs bound " + fmt(bound) +
                            ", long-spoke star " + fmt(r.makespan) + f.text.str()};
}

Outcome criterion7() {
  ft::families::Rng rng(7);
  Failures f;
  for (int i = 0; i < 200; ++i) {
    const auto inst = ft::testing::random_padded_graph(rng);
    const double bfs = audit.check(inst, ft::graphs::bfs_wakeup(inst), "bfs");
    const double ecc = ft::testing::occupied_eccentricity(inst.graph_data());
    if (std::abs(bfs - ecc) > kTol) f.add("graph " + std::to_string(i) + ": " + fmt(bfs) + " vs " + fmt(ecc));
  }
  return {f.count == 0, "200 padded graphs" + f.text.str()};
}

Outcome criterion8() {
  ft::families::Rng rng(8);
  Failures f;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = ft::testing::random_bounded_graph(rng, 9);
    ft::graphs::OnlineStats stats;
    const double online = audit.check(inst, ft::graphs::online_cascade(inst, &stats, true), "online");
    const double opt = optimum(inst);
    const double ratio = opt > 0.0 ? online / opt : 1.0;
    const double delta = ft::graphs::graph_stats(inst.graph_data()).delta;
    const double bound = ft::graphs::kOnlineConstant * (1.0 + std::log2(1.0 + delta));
    worst = std::max(worst, ratio / bound);
    if (ratio > bound + kTol) f.add("graph " + std::to_string(i) + " ratio " + fmt(ratio));
    if (stats.out_of_view_queries != 0) f.add("graph " + std::to_string(i) + " left its view");
  }
  std::string adversary;
  double previous = 0.0;
  for (int k : {2, 4, 8}) {
    const auto inst = ft::graphs::adversary_family(k, 0.1, ft::graphs::worst_adversary_placement(k));
    const double ratio = audit.check(inst, ft::graphs::online_cascade(inst, nullptr, true), "online") / optimum(inst);
    if (ratio < previous - kTol) f.add("adversary ratio decreased at k=" + std::to_string(k));
    previous = ratio;
    adversary += " k=" + std::to_string(k) + ":" + fmt(ratio);
  }
  return {f.count == 0, "200 graphs, max ratio/bound " + fmt(worst) + "; adversary" + adversary + f.text.str()};
}

Outcome criterion9() {
  ft::families::Rng rng(9);
  Failures f;
  for (int i = 0; i < 100; ++i) {
    const int n = rng.integer(1, 50);
    const auto pts = ft::testing::random_planar(rng, n, i % 3 == 0);
    const auto fast = ft::geometry::build_theta_graph(pts, 9);
    const auto slow = ft::geometry::build_theta_graph_brute_force(pts, 9);
    if (fast.neighbor != slow.neighbor) f.add("set " + std::to_string(i) + " (n=" + std::to_string(n) + ")");
  }
  return {f.count == 0, "100 point sets, K=9" + f.text.str()};
}

Outcome criterion10() {
  ft::families::Rng rng(10);
  Failures f;
  double worst = 0.0, worst_diam = 0.0;
  for (int i = 0; i < 300; ++i) {
    const auto inst = ft::testing::random_points_instance(rng, rng.integer(2, 9));
    const auto tree = ft::geometry::geo_o1(inst);
    if (!ft::validate_tree(inst, tree).empty()) f.add("set " + std::to_string(i) + " not fully woken");
    const double geo = audit.check(inst, tree, "geo-o1");
    const double opt = optimum(inst);
    const double diam = ft::testing::robot_diameter(inst);
    worst = std::max(worst, geo / opt);
    worst_diam = std::max(worst_diam, geo / diam);
    if (geo > ft::geometry::kGeoConstant * opt + kTol) f.add("set " + std::to_string(i) + " vs optimum");
    if (geo > ft::geometry::kDiameterConstant * diam + kTol) f.add("set " + std::to_string(i) + " vs diameter");
  }
  return {f.count == 0, "300 point sets, max ratio " + fmt(worst) + ", max makespan/diam " + fmt(worst_diam) +
                            f.text.str()};
}

Outcome criterion11() {
  const auto start = Clock::now();
  ft::families::Rng rng(11);
  Failures f;
  double worst = 0.0;
  ft::geometry::GeoPtasOptions options;
  options.epsilon = 1.0;  // m = ceil(2 / 1) = 2
  for (int i = 0; i < 100; ++i) {
    const auto inst = ft::testing::random_points_instance(rng, rng.integer(2, 8));
    const auto r = ft::geometry::geo_ptas(inst, options);
    if (r.m != 2) f.add("grid size " + std::to_string(r.m));
    audit.check(inst, r.tree, "geo-ptas");
    const double opt = optimum(inst);
    const double geo = audit.check(inst, ft::geometry::geo_o1(inst), "geo-o1");
    worst = std::max(worst, r.makespan / opt);
    if (r.makespan < opt - kTol) f.add("set " + std::to_string(i) + " below the optimum");
    if (r.makespan > geo + kTol) f.add("set " + std::to_string(i) + " above geo_o1");
    if (r.makespan > (1.0 + ft::geometry::kGeoPtasConstant * options.epsilon) * opt + kTol)
      f.add("set " + std::to_string(i) + " above the bound");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 300.0) f.add("runtime " + fmt(elapsed) + " s");
  return {f.count == 0, "100 point sets, max ratio " + fmt(worst) + ", " + fmt(elapsed) + " s" + f.text.str()};
}

Outcome criterion12() {
  ft::families::Rng rng(12);
  Failures f;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = rng.integer(2, 256);
    const auto tc = ft::testing::random_tree_case(rng, n, i % 2 == 0);
    const double before = ft::evaluate_makespan(tc.instance, tc.tree);
    for (double mu : {0.25, 0.5, 1.0}) {
      const auto balanced = ft::pseudo_balance(tc.instance, tc.tree, mu);
      const std::string where = "tree " + std::to_string(i) + " mu " + fmt(mu);
      if (!ft::validate_tree(tc.instance, balanced).empty()) {
        f.add(where + " invalid");
        continue;
      }
      const double after = audit.check(tc.instance, balanced, "pseudo-balance");
      if (after > (1.0 + mu) * before + kTol) f.add(where + " makespan " + fmt(after) + " vs " + fmt(before));
      // Nodes on the longest root-to-leaf path, counted from parent links.
      std::vector<int> nodes(balanced.size(), 0);
      int longest = 0;
      std::function<int(ft::RobotId)> count = [&](ft::RobotId v) {
        if (nodes[v] == 0) nodes[v] = balanced.parent(v) == ft::kNoRobot ? 1 : count(balanced.parent(v)) + 1;
        return nodes[v];
      };
      for (ft::RobotId v = 0; v < static_cast<ft::RobotId>(balanced.size()); ++v) longest = std::max(longest, count(v));
      const double bound = ft::pseudo_balance_node_bound(balanced.size(), mu);
      const double log_n = std::log2(static_cast<double>(balanced.size()));
      worst = std::max(worst, longest / ((1.0 + 1.0 / mu) * log_n * log_n));
      if (longest > bound + kTol) f.add(where + " path of " + std::to_string(longest) + " nodes");
    }
  }
  return {f.count == 0, "100 trees x 3 mu, node constant needed " + fmt(worst) + f.text.str()};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion13(const std::string& cli, const fs::path& workdir) {
  Failures f;
  if (audit.failures > 0) f.add(std::to_string(audit.failures) + " solver outputs failed, first: " + audit.first_failure);
  if (cli.empty()) {
    f.add("no --cli given");
    return {false, f.text.str()};
  }
  fs::remove_all(workdir);
  fs::create_directories(workdir);
  auto run = [&](const std::string& args) {
    const std::string command = "\"" + cli + "\" " + args + " > \"" + (workdir / "log.txt").string() + "\" 2>&1";
    return std::system(command.c_str());
  };
  struct Case {
    std::string name, gen, algorithm, extra;
  };
  const std::vector<Case> cases{
      {"tight", "--family sef-tight --k 3", "sef", ""},
      {"star", "--family random-star --n 5 --seed 4", "tagteam", ""},
      {"graph", "--family random-graph --n 6 --q 1 --seed 5", "online", ""},
      {"points", "--family random-points --n 7 --seed 6", "geo-ptas", "--epsilon 1"},
      {"points", "--family random-points --n 7 --seed 6", "geo-o1", ""},
      {"small", "--family random-points --n 6 --seed 7", "exact", ""},
  };
  int round_trips = 0;
  for (const auto& c : cases) {
    std::string first_instance, first_schedule;
    for (int pass = 0; pass < 2; ++pass) {
      const auto instance = workdir / (c.name + std::to_string(pass) + ".json");
      const auto schedule = workdir / (c.name + "-" + c.algorithm + std::to_string(pass) + ".json");
      const std::string label = c.name + "/" + c.algorithm;
      if (run("gen " + c.gen + " --output \"" + instance.string() + "\"") != 0) {
        f.add(label + " gen failed: " + read_file(workdir / "log.txt"));
        break;
      }
      if (run("solve --input \"" + instance.string() + "\" --algorithm " + c.algorithm + " " + c.extra +
              " --output \"" + schedule.string() + "\"") != 0) {
        f.add(label + " solve failed: " + read_file(workdir / "log.txt"));
        break;
      }
      if (run("validate --input \"" + instance.string() + "\" --schedule \"" + schedule.string() + "\"") != 0) {
        f.add(label + " validate failed: " + read_file(workdir / "log.txt"));
        break;
      }
      const auto inst_text = read_file(instance), sched_text = read_file(schedule);
      if (pass == 0) {
        first_instance = inst_text;
        first_schedule = sched_text;
      } else {
        if (inst_text != first_instance) f.add(label + " instance differs between runs");
        if (sched_text != first_schedule) f.add(label + " schedule differs between runs");
        ++round_trips;
      }
    }
  }
  return {f.count == 0, std::to_string(audit.checked) + " solver outputs checked, " + std::to_string(round_trips) +
                            " CLI round trips" + f.text.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path workdir = fs::temp_directory_path() / "freezetag_acceptance";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--cli") cli = argv[i + 1];
    else if (key == "--workdir") workdir = argv[i + 1];
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"long-spoke star values", criterion1},
      {"SEF tight family", criterion2},
      {"SEF property suite", criterion3},
      {"unit-star greedy", criterion4},
      {"Tag-Team within 14", criterion5},
      {"star PTAS", criterion6},
      {"BFS sufficiency", criterion7},
      {"online cascade", criterion8},
      {"Theta-graph builder", criterion9},
      {"geo_o1 constants", criterion10},
      {"geo_ptas with m = 2", criterion11},
      {"pseudo_balance", criterion12},
      {"lower bounds, validity and CLI round trip", [&] { return criterion13(cli, workdir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << ": "
              << outcome.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
