#include "freezetag/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "freezetag/errors.hpp"

namespace freezetag::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ValidationError(-1, field + ": " + message);
}

const json& require(const json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) field_error(where + key, "missing field");
  return object.at(key);
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) field_error(field, "expected a number");
  return value.get<double>();
}

int integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) field_error(field, "expected an integer");
  return value.get<int>();
}

std::string indexed(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& array(const json& value, const std::string& field) {
  if (!value.is_array()) field_error(field, "expected an array");
  return value;
}

Instance star_from_json(const json& doc) {
  const auto& spokes = array(require(doc, "spokes", ""), "spokes");
  std::vector<Spoke> out;
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    const std::string where = indexed("spokes", i) + ".";
    const auto& s = spokes[i];
    Spoke spoke;
    spoke.length = number(require(s, "length", where), where + "length");
    spoke.robots = s.contains("robots") ? integer(s.at("robots"), where + "robots") : 1;
    out.push_back(spoke);
  }
  return Instance::star(std::move(out));
}

Instance graph_from_json(const json& doc) {
  GraphData g;
  g.vertices = integer(require(doc, "vertices", ""), "vertices");
  g.source = doc.contains("source") ? integer(doc.at("source"), "source") : 0;
  const auto& edges = array(require(doc, "edges", ""), "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = indexed("edges", i);
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 3) field_error(where, "expected [u, v, weight]");
    g.edges.push_back({integer(e[0], where + "[0]"), integer(e[1], where + "[1]"), number(e[2], where + "[2]")});
  }
  const auto& robots = array(require(doc, "robots", ""), "robots");
  for (std::size_t i = 0; i < robots.size(); ++i) g.robots.push_back(integer(robots[i], indexed("robots", i)));
  return Instance::graph(std::move(g));
}

Instance points_from_json(const json& doc) {
  PointsData p;
  p.dim = doc.contains("dim") ? integer(doc.at("dim"), "dim") : 2;
  p.source = doc.contains("source") ? integer(doc.at("source"), "source") : 0;
  const auto& points = array(require(doc, "points", ""), "points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = indexed("points", i);
    const auto& pt = array(points[i], where);
    std::vector<double> coords;
    for (std::size_t a = 0; a < pt.size(); ++a) coords.push_back(number(pt[a], indexed(where, a)));
    p.points.push_back(std::move(coords));
  }
  if (doc.contains("robots")) {
    const auto& robots = array(doc.at("robots"), "robots");
    for (std::size_t i = 0; i < robots.size(); ++i) p.robots.push_back(integer(robots[i], indexed("robots", i)));
  }
  if (doc.contains("metric")) {
    if (!doc.at("metric").is_string()) field_error("metric", "expected a string");
    try {
      p.metric = metric_from_string(doc.at("metric").get<std::string>());
    } catch (const Error& e) {
      field_error("metric", e.what());
    }
  }
  return Instance::points(std::move(p));
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json doc;
  doc["kind"] = to_string(inst.kind());
  switch (inst.kind()) {
    case InstanceKind::Star: {
      doc["spokes"] = json::array();
      for (const auto& s : inst.star_data().spokes) doc["spokes"].push_back({{"length", s.length}, {"robots", s.robots}});
      break;
    }
    case InstanceKind::Graph: {
      const auto& g = inst.graph_data();
      doc["vertices"] = g.vertices;
      doc["source"] = g.source;
      doc["edges"] = json::array();
      for (const auto& e : g.edges) doc["edges"].push_back({e.u, e.v, e.weight});
      doc["robots"] = g.robots;
      break;
    }
    case InstanceKind::Points: {
      const auto& p = inst.points_data();
      doc["dim"] = p.dim;
      doc["source"] = p.source;
      doc["points"] = p.points;
      doc["robots"] = p.robots;
      doc["metric"] = to_string(p.metric);
      break;
    }
  }
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) field_error("(root)", "expected an object");
  const auto& kind = require(doc, "kind", "");
  if (!kind.is_string()) field_error("kind", "expected a string");
  const auto name = kind.get<std::string>();
  if (name == "star") return star_from_json(doc);
  if (name == "graph") return graph_from_json(doc);
  if (name == "points") return points_from_json(doc);
  field_error("kind", "unknown instance kind '" + name + "'");
}

Instance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(-1, "malformed JSON at line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + e.what());
  }
  return instance_from_json(doc);
}

Instance parse_instance(const std::string& path) { return parse_instance_text(read_file(path)); }

void write_instance(const std::string& path, const Instance& instance) {
  write_file(path, instance_to_json(instance).dump(2) + "\n");
}

json schedule_to_json(const Schedule& schedule, std::size_t robots) {
  json doc;
  doc["makespan"] = schedule.makespan;
  doc["robots"] = robots;
  doc["events"] = json::array();
  for (const auto& e : schedule.events)
    doc["events"].push_back({{"t", e.time},
                             {"waker", e.waker},
                             {"woken", e.woken},
                             {"parent", e.parent},
                             {"from_site", e.from_site},
                             {"to_site", e.to_site}});
  return doc;
}

Schedule schedule_from_json(const json& doc) {
  Schedule s;
  s.makespan = number(require(doc, "makespan", ""), "makespan");
  const auto& events = array(require(doc, "events", ""), "events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string where = indexed("events", i) + ".";
    const auto& e = events[i];
    ScheduleEvent ev;
    ev.time = number(require(e, "t", where), where + "t");
    ev.waker = integer(require(e, "waker", where), where + "waker");
    ev.woken = integer(require(e, "woken", where), where + "woken");
    ev.parent = e.contains("parent") ? integer(e.at("parent"), where + "parent") : ev.waker;
    ev.from_site = e.contains("from_site") ? integer(e.at("from_site"), where + "from_site") : 0;
    ev.to_site = e.contains("to_site") ? integer(e.at("to_site"), where + "to_site") : 0;
    s.events.push_back(ev);
  }
  return s;
}

WakeUpTree load_schedule_tree(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(-1, std::string("malformed schedule JSON: ") + e.what());
  }
  const auto schedule = schedule_from_json(doc);
  const std::size_t robots = doc.contains("robots") ? doc.at("robots").get<std::size_t>() : schedule.events.size() + 1;
  return tree_from_schedule(robots, schedule);
}

std::string instance_digest(const Instance& instance) {
  const std::string canonical = instance_to_json(instance).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
}

}  // namespace freezetag::io
