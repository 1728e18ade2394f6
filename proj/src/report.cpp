#include "freezetag/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "freezetag/errors.hpp"
#include "freezetag/geometry.hpp"
#include "freezetag/graphs.hpp"
#include "freezetag/io.hpp"
#include "freezetag/stars.hpp"

namespace freezetag::bench {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"exact", "unit-greedy", "sef",    "rd",     "tagteam",
                                              "star-ptas", "bfs",     "online", "geo-o1", "geo-ptas"};
  return names;
}

bool accepts(const std::string& algorithm, InstanceKind kind) {
  if (algorithm == "exact") return true;
  if (algorithm == "bfs" || algorithm == "online") return kind == InstanceKind::Graph;
  if (algorithm == "geo-o1" || algorithm == "geo-ptas") return kind == InstanceKind::Points;
  return kind == InstanceKind::Star;
}

namespace {

std::string fixed9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  return buf;
}

std::string shortest(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

WakeUpTree dispatch(const Instance& inst, const std::string& algorithm, const SolveParams& p,
                    std::map<std::string, std::string>& notes) {
  if (algorithm == "exact") {
    auto result = exact::solve_optimal(inst, p.limits);
    notes["optimal"] = result.optimal ? "true" : "false";
    notes["search_nodes"] = std::to_string(result.nodes);
    return result.tree;
  }
  if (algorithm == "unit-greedy") return stars::unit_star_greedy(inst);
  if (algorithm == "sef") return stars::sef(inst);
  if (algorithm == "rd") return stars::repeated_doubling(inst);
  if (algorithm == "tagteam") return stars::tag_team(inst);
  if (algorithm == "star-ptas") {
    stars::PtasOptions o;
    o.epsilon = p.epsilon;
    o.allow_small_epsilon = p.allow_small_epsilon;
    auto result = stars::star_ptas(inst, o);
    notes["epsilon"] = shortest(p.epsilon);
    notes["configurations"] = std::to_string(result.configurations);
    return result.tree;
  }
  if (algorithm == "bfs") return graphs::bfs_wakeup(inst);
  if (algorithm == "online") {
    graphs::OnlineStats stats;
    auto tree = graphs::online_cascade(inst, &stats, p.online_strict);
    const auto gs = graphs::graph_stats(inst.graph_data());
    notes["delta_G"] = shortest(gs.delta);
    notes["rho_max"] = shortest(gs.rho_max);
    notes["out_of_view_queries"] = std::to_string(stats.out_of_view_queries);
    return tree;
  }
  if (algorithm == "geo-o1") {
    geometry::GeoOptions o;
    o.K = p.K;
    o.allow_small_K = p.K < 9;
    notes["K"] = std::to_string(p.K);
    return geometry::geo_o1(inst, o);
  }
  if (algorithm == "geo-ptas") {
    geometry::GeoPtasOptions o;
    o.epsilon = p.epsilon;
    o.m_override = p.m_override;
    o.allow_large_grid = p.m_override > 0;
    o.K = p.K;
    auto result = geometry::geo_ptas(inst, o);
    notes["epsilon"] = shortest(p.epsilon);
    notes["m"] = std::to_string(result.m);
    notes["pixel_trees"] = std::to_string(result.trees);
    return result.tree;
  }
  throw ParameterError("unknown algorithm '" + algorithm + "'");
}

}  // namespace

RunResult run(const Instance& instance, const std::string& algorithm, const SolveParams& params,
              const std::string& name) {
  if (std::find(algorithm_names().begin(), algorithm_names().end(), algorithm) == algorithm_names().end())
    throw ParameterError("unknown algorithm '" + algorithm + "'");
  if (!accepts(algorithm, instance.kind()))
    throw PreconditionError("algorithm '" + algorithm + "' does not apply to " + to_string(instance.kind()) +
                            " instances");
  RunResult out;
  auto& r = out.report;
  r.instance = name;
  r.digest = io::instance_digest(instance);
  r.algorithm = algorithm;
  const auto start = std::chrono::steady_clock::now();
  out.tree = dispatch(instance, algorithm, params, r.params);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (auto violations = validate_tree(instance, out.tree); !violations.empty())
    throw ValidationError(std::move(violations));
  out.schedule = build_schedule(instance, out.tree);
  r.makespan = out.schedule.makespan;
  r.bounds = lower_bounds(instance);
  if (params.oracle && instance.robot_count() <= params.limits.max_robots) {
    r.oracle = algorithm == "exact" ? r.makespan : exact::solve_optimal(instance, params.limits).makespan;
    r.ratio = *r.oracle > 0.0 ? r.makespan / *r.oracle : 1.0;
  }
  return out;
}

Table report_table(std::vector<SolveReport> reports, bool deterministic) {
  std::stable_sort(reports.begin(), reports.end(), [](const SolveReport& a, const SolveReport& b) {
    return a.digest != b.digest ? a.digest < b.digest : a.algorithm < b.algorithm;
  });
  const std::vector<std::string> header{"instance", "algorithm", "makespan", "oracle", "ratio", "time_ms"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.instance.empty() ? r.digest : r.instance, r.algorithm, fixed9(r.makespan),
                    r.oracle ? fixed9(*r.oracle) : "", r.ratio ? fixed9(*r.ratio) : "",
                    deterministic ? "" : fixed9(r.wall_ms)});
  }

  Table t;
  auto csv_line = [](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    return line + "\n";
  };
  t.csv = csv_line(header);
  for (const auto& row : rows) t.csv += csv_line(row);

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto text_line = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string pad(width[c] - cells[c].size(), ' ');
      line += (c ? "  " : "") + (c < 2 ? cells[c] + pad : pad + cells[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + "\n";
  };
  t.text = text_line(header);
  for (const auto& row : rows) t.text += text_line(row);
  return t;
}

std::string report_to_json(const SolveReport& r) {
  nlohmann::json doc;
  doc["instance"] = r.instance;
  doc["digest"] = r.digest;
  doc["algorithm"] = r.algorithm;
  doc["makespan"] = r.makespan;
  doc["lower_bounds"] = {{"max_distance_from_source", r.bounds.max_distance_from_source},
                         {"half_diameter", r.bounds.half_diameter}};
  doc["oracle"] = r.oracle ? nlohmann::json(*r.oracle) : nlohmann::json(nullptr);
  doc["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
  doc["wall_ms"] = r.wall_ms;
  doc["params"] = r.params;
  return doc.dump(2);
}

std::string render_svg(const Instance& instance, const Schedule& schedule) {
  const std::size_t n = instance.robot_count();
  const double row = 18.0, left = 60.0, width = 720.0, top = 24.0;
  const double span = schedule.makespan > 0.0 ? schedule.makespan : 1.0;
  auto x = [&](double t) { return left + width * t / span; };
  const auto wake = [&] {
    std::vector<double> w(n, 0.0);
    for (const auto& e : schedule.events) w[e.woken] = e.time;
    return w;
  }();

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 40 << "\" height=\""
      << top + row * static_cast<double>(n) + 30 << "\" font-family=\"monospace\" font-size=\"11\">\n";
  svg << "<text x=\"" << left << "\" y=\"14\">makespan " << schedule.makespan << "</text>\n";
  for (std::size_t r = 0; r < n; ++r) {
    const double y = top + row * static_cast<double>(r);
    svg << "<text x=\"4\" y=\"" << y + 12 << "\">r" << r << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << y + 9 << "\" x2=\"" << left + width << "\" y2=\"" << y + 9
        << "\" stroke=\"#ddd\"/>\n";
  }
  for (const auto& e : schedule.events) {
    const double y = top + row * e.waker;
    const double from = wake[e.parent];
    svg << "<rect x=\"" << x(from) << "\" y=\"" << y + 3 << "\" width=\"" << std::max(1.0, x(e.time) - x(from))
        << "\" height=\"12\" fill=\"#4a7fb5\"><title>r" << e.waker << " wakes r" << e.woken << " at " << e.time
        << "</title></rect>\n";
    svg << "<circle cx=\"" << x(e.time) << "\" cy=\"" << top + row * e.woken + 9 << "\" r=\"3\" fill=\"#c0392b\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace freezetag::bench
