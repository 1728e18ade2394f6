// Command-line front end: generate instances, solve them, benchmark directories.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freezetag/errors.hpp"
#include "freezetag/families.hpp"
#include "freezetag/io.hpp"
#include "freezetag/report.hpp"

namespace fs = std::filesystem;
using namespace freezetag;

namespace {

constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct SolveArgs {
  std::string input, algorithm, output, svg, report;
  double epsilon = 0.25;
  int K = 9;
  int m_override = 0;
  bool oracle = false, online = false, allow_small_epsilon = false;
  std::size_t max_robots = 10;
};

bench::SolveParams params_of(const SolveArgs& a) {
  bench::SolveParams p;
  p.epsilon = a.epsilon;
  p.allow_small_epsilon = a.allow_small_epsilon;
  p.K = a.K;
  p.m_override = a.m_override;
  p.online_strict = a.online;
  p.oracle = a.oracle;
  p.limits.max_robots = a.max_robots;
  return p;
}

int solve(const SolveArgs& a) {
  const Instance inst = io::parse_instance(a.input);
  const auto result = bench::run(inst, a.algorithm, params_of(a), fs::path(a.input).stem().string());
  const auto& r = result.report;
  std::cout << r.algorithm << ": makespan " << r.makespan << "  lower bound " << r.bounds.best();
  if (r.ratio) std::cout << "  oracle " << *r.oracle << "  ratio " << *r.ratio;
  std::cout << "\n";
  if (!a.output.empty())
    io::write_file(a.output, io::schedule_to_json(result.schedule, inst.robot_count()).dump(2) + "\n");
  if (!a.report.empty()) io::write_file(a.report, bench::report_to_json(r) + "\n");
  if (!a.svg.empty()) io::write_file(a.svg, bench::render_svg(inst, result.schedule));
  return 0;
}

int validate(const std::string& input, const std::string& schedule) {
  const Instance inst = io::parse_instance(input);
  const WakeUpTree tree = io::load_schedule_tree(schedule);
  if (auto violations = validate_tree(inst, tree); !violations.empty()) throw ValidationError(std::move(violations));
  std::cout << "valid: makespan " << evaluate_makespan(inst, tree) << "\n";
  return 0;
}

int bench_dir(const std::string& dir, const std::string& algorithms, const SolveArgs& a, const std::string& csv,
              bool deterministic) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<bench::SolveReport> reports;
  for (const auto& file : files) {
    const Instance inst = io::parse_instance(file.string());
    for (const auto& algorithm : split(algorithms)) {
      if (!bench::accepts(algorithm, inst.kind())) continue;
      try {
        reports.push_back(bench::run(inst, algorithm, params_of(a), file.stem().string()).report);
      } catch (const PreconditionError& e) {
        std::cerr << file.filename().string() << " / " << algorithm << ": skipped (" << e.what() << ")\n";
      }
    }
  }
  if (reports.empty()) throw Error("bench: no instance matched the requested algorithms");
  const auto table = bench::report_table(reports, deterministic);
  std::cout << table.text;
  if (!csv.empty()) io::write_file(csv, table.csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Freeze-tag wake-up schedules"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family, gen_output;
  families::FamilyParams fp;
  gen->add_option("--family", family, "family name")->required()->check(CLI::IsMember(families::family_names()));
  gen->add_option("--k", fp.k, "family parameter k");
  gen->add_option("--n", fp.n, "family size parameter n");
  gen->add_option("--q", fp.q, "robots per leaf or vertex (0: random)");
  gen->add_option("--epsilon", fp.epsilon, "family epsilon");
  gen->add_option("--seed", fp.seed, "random seed");
  gen->add_option("--placement", fp.placement, "online-adversary populous neighbor (-1: worst)");
  gen->add_option("--output", gen_output, "instance file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
  SolveArgs sa;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", sa.epsilon, "approximation parameter");
    cmd->add_option("--K", sa.K, "Theta-graph sectors");
    cmd->add_option("--m-override", sa.m_override, "pixel grid size for geo-ptas");
    cmd->add_flag("--allow-small-epsilon", sa.allow_small_epsilon, "accept star-ptas epsilon below 0.2");
    cmd->add_flag("--oracle", sa.oracle, "compare against the exact optimum");
    cmd->add_flag("--online", sa.online, "fail on any query outside the online view");
    cmd->add_option("--max-robots", sa.max_robots, "exact solver robot limit");
  };
  solve_cmd->add_option("--input", sa.input, "instance file")->required();
  solve_cmd->add_option("--algorithm", sa.algorithm, "algorithm")
      ->required()
      ->check(CLI::IsMember(bench::algorithm_names()));
  solve_cmd->add_option("--output", sa.output, "schedule file");
  solve_cmd->add_option("--svg", sa.svg, "Gantt chart file");
  solve_cmd->add_option("--report", sa.report, "report JSON file");
  add_common(solve_cmd);

  auto* validate_cmd = app.add_subcommand("validate", "re-load a schedule and validate it");
  std::string v_input, v_schedule;
  validate_cmd->add_option("--input", v_input, "instance file")->required();
  validate_cmd->add_option("--schedule", v_schedule, "schedule file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "run algorithms over a directory of instances");
  std::string dir, algorithms, csv;
  bool deterministic = false;
  bench_cmd->add_option("--dir", dir, "instance directory")->required();
  bench_cmd->add_option("--algorithms", algorithms, "comma-separated algorithms")->required();
  bench_cmd->add_option("--csv", csv, "CSV output");
  bench_cmd->add_flag("--deterministic", deterministic, "leave the time column blank");
  add_common(bench_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      io::write_instance(gen_output, families::generate(family, fp));
      return 0;
    }
    if (*solve_cmd) return solve(sa);
    if (*validate_cmd) return validate(v_input, v_schedule);
    if (*bench_cmd) return bench_dir(dir, algorithms, sa, csv, deterministic);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
