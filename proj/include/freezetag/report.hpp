#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freezetag/exact.hpp"
#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag::bench {

const std::vector<std::string>& algorithm_names();

struct SolveParams {
  double epsilon = 0.25;
  bool allow_small_epsilon = false;
  int K = 9;
  int m_override = 0;
  bool online_strict = false;   // reject any query outside the online view
  bool oracle = false;          // compute the exact optimum when within limits
  exact::Limits limits;
};

struct SolveReport {
  std::string instance;         // display name (file stem or family)
  std::string digest;
  std::string algorithm;
  double makespan = 0.0;
  LowerBounds bounds;
  std::optional<double> oracle;
  std::optional<double> ratio;  // present exactly when oracle is
  double wall_ms = 0.0;
  std::map<std::string, std::string> params;
};

struct RunResult {
  SolveReport report;
  WakeUpTree tree;
  Schedule schedule;
};

// Runs one algorithm. Throws PreconditionError when the algorithm does not fit the instance kind.
RunResult run(const Instance& instance, const std::string& algorithm, const SolveParams& params,
              const std::string& name = "");

// Whether `algorithm` accepts instances of this kind.
bool accepts(const std::string& algorithm, InstanceKind kind);

struct Table {
  std::string csv;
  std::string text;
};

// Columns: instance, algorithm, makespan, oracle, ratio, time_ms. Reports are
// ordered by (digest, algorithm). Floats use 9 decimals; with
// `deterministic` the time column is left blank so the CSV is bit-stable.
Table report_table(std::vector<SolveReport> reports, bool deterministic = false);

std::string report_to_json(const SolveReport& report);

// Static Gantt chart: one row per robot, a bar for every trip that ends in a wake-up.
std::string render_svg(const Instance& instance, const Schedule& schedule);

}  // namespace freezetag::bench
