#include "freezetag/families.hpp"

#include <cmath>
#include <string>

#include "freezetag/errors.hpp"
#include "freezetag/graphs.hpp"

namespace freezetag::families {

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"sef-tight",   "sef-bad",      "rd-bad",       "online-adversary",
                                              "random-star", "random-graph", "random-points"};
  return names;
}

Instance sef_tight(int k) {
  if (k < 1 || k > 12) throw ParameterError("sef-tight: k must lie in 1..12");
  std::vector<Spoke> spokes;
  const int units = (1 << k) - 1;
  for (int i = 0; i < units; ++i) spokes.push_back({1.0, 1});
  for (int i = 0; i < (1 << k); ++i) spokes.push_back({static_cast<double>(k), 1});
  spokes.push_back({3.0 * k, 1});
  return Instance::star(std::move(spokes));
}

Instance sef_bad(int n, double epsilon) {
  if (n < 2) throw ParameterError("sef-bad: n must be at least 2");
  if (!(epsilon > 0.0)) throw ParameterError("sef-bad: epsilon must be positive");
  std::vector<Spoke> spokes{{1.0 + epsilon, n - 1}};
  for (int i = 0; i < n - 1; ++i) spokes.push_back({1.0, 1});
  return Instance::star(std::move(spokes));
}

Instance rd_bad(int n) {
  if (n < 2 || n % 2 != 0) throw ParameterError("rd-bad: n must be an even number >= 2");
  std::vector<Spoke> spokes;
  for (int i = 0; i < n / 2; ++i) spokes.push_back({1.0, 1});
  for (int i = 0; i < n / 2; ++i) spokes.push_back({std::log2(static_cast<double>(n)), 1});
  return Instance::star(std::move(spokes));
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

namespace {

// Multiples of 1/8 keep lengths exact in binary and produce ties now and then.
double eighths(Rng& rng, int lo, int hi) { return rng.integer(lo * 8, hi * 8) / 8.0; }

}  // namespace

Instance random_star(int spokes, int q, Rng& rng) {
  if (spokes < 1) throw ParameterError("random-star: needs at least one spoke");
  std::vector<Spoke> out;
  for (int i = 0; i < spokes; ++i) out.push_back({eighths(rng, 1, 10), q > 0 ? q : rng.integer(1, 3)});
  return Instance::star(std::move(out));
}

Instance random_graph(int vertices, int q, Rng& rng) {
  if (vertices < 1) throw ParameterError("random-graph: needs at least one vertex");
  GraphData g;
  g.vertices = vertices;
  g.source = 0;
  for (int v = 1; v < vertices; ++v) g.edges.push_back({rng.integer(0, v - 1), v, eighths(rng, 1, 2)});
  const int extra = vertices / 2;
  for (int i = 0; i < extra; ++i) {
    const int u = rng.integer(0, vertices - 1), v = rng.integer(0, vertices - 1);
    if (u != v) g.edges.push_back({u, v, eighths(rng, 1, 2)});
  }
  for (int v = 0; v < vertices; ++v) g.robots.push_back(q > 0 ? q : rng.integer(1, 3));
  return Instance::graph(std::move(g));
}

Instance random_points(int n, Rng& rng) {
  if (n < 1) throw ParameterError("random-points: needs at least one point");
  PointsData p;
  for (int i = 0; i < n; ++i) p.points.push_back({rng.uniform(), rng.uniform()});
  return Instance::points(std::move(p));
}

Instance generate(const std::string& family, const FamilyParams& params) {
  Rng rng(params.seed);
  if (family == "sef-tight") return sef_tight(params.k);
  if (family == "sef-bad") return sef_bad(params.n, params.epsilon);
  if (family == "rd-bad") return rd_bad(params.n);
  if (family == "online-adversary") {
    const int placement = params.placement < 0 ? graphs::worst_adversary_placement(params.k) : params.placement;
    return graphs::adversary_family(params.k, params.epsilon, placement);
  }
  if (family == "random-star") return random_star(params.n, params.q, rng);
  if (family == "random-graph") return random_graph(params.n, params.q, rng);
  if (family == "random-points") return random_points(params.n, rng);
  throw ParameterError("unknown family '" + family + "'");
}

}  // namespace freezetag::families
