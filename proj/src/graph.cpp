// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace netmeasure {
namespace {

std::atomic<std::uint64_t> next_graph_id{1};

struct Endpoint {
  VertexId vertex;
  double offset;
};

// Vertices reachable from p by walking along its own arc, with the walked
// length. Unbounded arcs only expose their tail.
std::vector<Endpoint> endpoints(const MetricGraph& g, const GraphPoint& p) {
  const auto& a = g.arc(p.arc);
  std::vector<Endpoint> out{{a.tail, p.s}};
  if (a.head) out.push_back({*a.head, a.length - p.s});
  return out;
}

void floyd_warshall(std::vector<double>& d, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
}

}  // namespace

ValidationReport validate(const GraphSpec& spec) {
  ValidationReport report;
  if (spec.vertices.empty()) {
    report.fail("graph has no vertices");
    return report;
  }

  std::map<std::string, std::size_t> vidx;
  for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
    if (!vidx.emplace(spec.vertices[i], i).second)
      report.fail("duplicate vertex id '" + spec.vertices[i] + "'");
  }

  const std::size_t nv = spec.vertices.size();
  std::vector<int> out_deg(nv, 0), in_deg(nv, 0);
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::set<std::string> arc_ids;
  for (const auto& a : spec.arcs) {
    if (!arc_ids.insert(a.id).second) report.fail("duplicate arc id '" + a.id + "'");
    const auto t = vidx.find(a.tail);
    if (t == vidx.end()) {
      report.fail("arc '" + a.id + "' references unknown tail vertex '" + a.tail + "'");
      continue;
    }
    if (!(a.length > 0.0)) report.fail("arc '" + a.id + "' has non-positive length");
    out_deg[t->second]++;
    if (std::isinf(a.length)) {
      if (a.head) report.fail("unbounded arc '" + a.id + "' must not have a head vertex");
      continue;
    }
    if (!a.head) {
      report.fail("bounded arc '" + a.id + "' has no head vertex");
      continue;
    }
    const auto h = vidx.find(*a.head);
    if (h == vidx.end()) {
      report.fail("arc '" + a.id + "' references unknown head vertex '" + *a.head + "'");
      continue;
    }
    in_deg[h->second]++;
    parent[find(t->second)] = find(h->second);
  }

  std::set<std::string> seen_sources;
  for (const auto& s : spec.sources) {
    const auto it = vidx.find(s);
    if (it == vidx.end()) {
      report.fail("unknown source vertex '" + s + "'");
      continue;
    }
    if (!seen_sources.insert(s).second) report.fail("duplicate source '" + s + "'");
    if (out_deg[it->second] != 1)
      report.fail("source '" + s + "' must have exactly one outgoing arc");
    if (in_deg[it->second] != 0) report.fail("source '" + s + "' has incoming arcs");
  }

  for (std::size_t v = 0; v < nv; ++v)
    if (out_deg[v] == 0) report.fail("sink detected at vertex '" + spec.vertices[v] + "'");

  const std::size_t root = find(0);
  for (std::size_t v = 1; v < nv; ++v)
    if (find(v) != root) {
      report.fail("graph is not connected");
      break;
    }
  return report;
}

MetricGraph::MetricGraph(const GraphSpec& spec) : spec_(spec), id_(next_graph_id++) {
  const auto report = validate(spec);
  if (!report.ok()) throw Error("invalid graph: " + report.summary());

  vertex_names_ = spec.vertices;
  const std::size_t nv = vertex_names_.size();
  out_.resize(nv);
  in_.resize(nv);
  is_source_.assign(nv, false);

  for (const auto& a : spec.arcs) {
    Arc arc;
    arc.name = a.id;
    arc.tail = *find_vertex(a.tail);
    if (a.head) arc.head = *find_vertex(*a.head);
    arc.length = a.length;
    const ArcId id = arc_id(arcs_.size());
    out_[index(arc.tail)].push_back(id);
    if (arc.head) {
      in_[index(*arc.head)].push_back(id);
      min_length_ = std::min(min_length_, arc.length);
    }
    arcs_.push_back(std::move(arc));
  }
  for (const auto& s : spec.sources) {
    const VertexId v = *find_vertex(s);
    is_source_[index(v)] = true;
    sources_.push_back(v);
  }
  std::sort(sources_.begin(), sources_.end());

  undirected_.assign(nv * nv, kInf);
  directed_.assign(nv * nv, kInf);
  for (std::size_t v = 0; v < nv; ++v) undirected_[v * nv + v] = directed_[v * nv + v] = 0.0;
  for (const auto& a : arcs_) {
    if (!a.head) continue;
    const std::size_t t = index(a.tail), h = index(*a.head);
    directed_[t * nv + h] = std::min(directed_[t * nv + h], a.length);
    undirected_[t * nv + h] = std::min(undirected_[t * nv + h], a.length);
    undirected_[h * nv + t] = std::min(undirected_[h * nv + t], a.length);
  }
  floyd_warshall(undirected_, nv);
  floyd_warshall(directed_, nv);
}

std::optional<ArcId> MetricGraph::find_arc(const std::string& name) const {
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    if (arcs_[i].name == name) return arc_id(i);
  return std::nullopt;
}

std::optional<VertexId> MetricGraph::find_vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i)
    if (vertex_names_[i] == name) return vertex_id(i);
  return std::nullopt;
}

ArcId MetricGraph::source_arc(VertexId source) const {
  if (!is_source(source)) throw Error("vertex '" + vertex_name(source) + "' is not a source");
  return out_[index(source)].front();
}

bool MetricGraph::contains(const GraphPoint& p) const {
  if (index(p.arc) >= arcs_.size()) return false;
  return std::isfinite(p.s) && p.s >= 0.0 && p.s <= arcs_[index(p.arc)].length;
}

std::optional<VertexId> MetricGraph::vertex_at(const GraphPoint& p) const {
  const auto& a = arc(p.arc);
  if (p.s == 0.0) return a.tail;
  if (a.head && p.s == a.length) return a.head;
  return std::nullopt;
}

bool MetricGraph::same_point(const GraphPoint& x, const GraphPoint& y) const {
  if (x.arc == y.arc && x.s == y.s) return true;
  const auto vx = vertex_at(x);
  const auto vy = vertex_at(y);
  return vx && vy && *vx == *vy;
}

double graph_distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y) {
  double best = kInf;
  if (x.arc == y.arc) best = std::abs(x.s - y.s);
  for (const auto& ex : endpoints(g, x))
    for (const auto& ey : endpoints(g, y))
      best = std::min(best, ex.offset + g.vertex_distance(ex.vertex, ey.vertex) + ey.offset);
  return best;
}

std::optional<double> forward_distance(const MetricGraph& g, const GraphPoint& x,
                                       const GraphPoint& y) {
  double best = kInf;
  if (x.arc == y.arc && y.s >= x.s) best = y.s - x.s;

  const auto& ax = g.arc(x.arc);
  const auto& ay = g.arc(y.arc);
  std::vector<Endpoint> departures;
  if (ax.head) departures.push_back({*ax.head, ax.length - x.s});
  if (x.s == 0.0) departures.push_back({ax.tail, 0.0});
  std::vector<Endpoint> arrivals{{ay.tail, y.s}};
  if (ay.head && y.s == ay.length) arrivals.push_back({*ay.head, 0.0});

  for (const auto& d : departures)
    for (const auto& a : arrivals)
      best = std::min(best, d.offset + g.directed_vertex_distance(d.vertex, a.vertex) + a.offset);
  if (best == kInf) return std::nullopt;
  return best;
}

std::vector<ArcSegment> downstream_ball(const MetricGraph& g, const GraphPoint& x, double radius) {
  if (!(radius >= 0.0)) throw Error("visual radius must be non-negative");
  if (radius > g.min_arc_length())
    throw Error("visual radius exceeds the minimum arc length");
  const auto& a = g.arc(x.arc);
  std::vector<ArcSegment> out;
  const double reach = x.s + radius;
  out.push_back({x.arc, x.s, std::min(reach, a.length)});
  if (a.head && reach > a.length) {
    const double rest = reach - a.length;
    for (const ArcId j : g.outgoing(*a.head)) out.push_back({j, 0.0, rest});
  }
  return out;
}

std::vector<Path> enumerate_paths(const MetricGraph& g, const GraphPoint& x, int max_crossings) {
  if (max_crossings < 0) throw Error("max_crossings must be non-negative");
  std::vector<Path> out;
  Path current;
  auto expand = [&](auto&& self, ArcId arc, int crossings) -> void {
    current.arcs.push_back(arc);
    const auto& a = g.arc(arc);
    if (!a.head) {
      out.push_back({current.arcs, false});
    } else if (crossings == max_crossings) {
      out.push_back({current.arcs, true});
    } else {
      for (const ArcId next : g.outgoing(*a.head)) self(self, next, crossings + 1);
    }
    current.arcs.pop_back();
  };
  expand(expand, x.arc, 0);
  return out;
}

}  // namespace netmeasure
