// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/flat_metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "netmeasure/min_cost_flow.hpp"
#include "netmeasure/simplex.hpp"

namespace netmeasure {
namespace {

struct SupportNode {
  GraphPoint point;
  double weight = 0.0;
};

struct Edge {
  std::size_t i, j;
  double length;
};

// Distinct support points of mu - nu with their signed weights. Vertex
// aliases collapse to one node. With `with_vertices`, every graph vertex gets
// a node (index == vertex index) even when it carries no mass.
class Support {
 public:
  Support(const MetricGraph& g, bool with_vertices) : g_(g) {
    vertex_node_.assign(g.num_vertices(), kNone);
    if (with_vertices)
      for (std::size_t v = 0; v < g.num_vertices(); ++v) vertex_node(vertex_id(v));
  }

  void add(const AtomicMeasure& m, double sign) {
    for (const auto& a : m.atoms()) nodes_[node_of(a.point)].weight += sign * a.mass;
  }

  std::vector<SupportNode>& nodes() { return nodes_; }

  std::vector<Edge> chain_edges() const {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < g_.num_arcs(); ++k) {
      const auto& arc = g_.arc(arc_id(k));
      std::vector<std::pair<double, std::size_t>> line{{0.0, vertex_node_[index(arc.tail)]}};
      for (auto it = interior_.lower_bound({k, -kInf}); it != interior_.end() && it->first.first == k; ++it)
        line.emplace_back(it->first.second, it->second);
      if (arc.head) line.emplace_back(arc.length, vertex_node_[index(*arc.head)]);
      for (std::size_t p = 1; p < line.size(); ++p)
        edges.push_back({line[p - 1].second, line[p].second, line[p].first - line[p - 1].first});
    }
    return edges;
  }

  std::vector<Edge> all_pair_edges() const {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t j = i + 1; j < nodes_.size(); ++j)
        edges.push_back({i, j, graph_distance(g_, nodes_[i].point, nodes_[j].point)});
    return edges;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t vertex_node(VertexId v) {
    std::size_t& slot = vertex_node_[index(v)];
    if (slot == kNone) {
      slot = nodes_.size();
      const auto& out = g_.outgoing(v);
      nodes_.push_back({{out.front(), 0.0}, 0.0});
    }
    return slot;
  }

  std::size_t node_of(const GraphPoint& p) {
    if (const auto v = g_.vertex_at(p)) return vertex_node(*v);
    const auto key = std::make_pair(index(p.arc), p.s);
    const auto it = interior_.find(key);
    if (it != interior_.end()) return it->second;
    interior_.emplace(key, nodes_.size());
    nodes_.push_back({p, 0.0});
    return nodes_.size() - 1;
  }

  const MetricGraph& g_;
  std::vector<SupportNode> nodes_;
  std::vector<std::size_t> vertex_node_;
  std::map<std::pair<std::size_t, double>, std::size_t> interior_;
};

void check_binding(const MetricGraph& g, const AtomicMeasure& mu, const AtomicMeasure& nu) {
  if (mu.graph_id() != g.id() || nu.graph_id() != g.id())
    throw Error("flat metric: measures are bound to a different graph");
}

bool all_zero(const std::vector<SupportNode>& nodes) {
  return std::all_of(nodes.begin(), nodes.end(), [](const SupportNode& n) { return n.weight == 0.0; });
}

}  // namespace

double bl_dual_norm_diff(const MetricGraph& g, const AtomicMeasure& mu, const AtomicMeasure& nu,
                         const FlatMetricOptions& options) {
  check_binding(g, mu, nu);
  const bool chains = options.constraints == LipschitzConstraints::kArcChains;
  Support support(g, chains);
  support.add(mu, 1.0);
  support.add(nu, -1.0);
  const auto& nodes = support.nodes();
  if (all_zero(nodes)) return 0.0;
  const auto edges = chains ? support.chain_edges() : support.all_pair_edges();

  // Dual of  max sum w_i phi_i  s.t. |phi_i| <= b, |phi_i - phi_j| <= l d_ij,
  // b + l <= 1: route w through the edges (f) or create/destroy it at the
  // nodes (u, u'), minimizing lambda >= max(sum u + u', sum d f).
  const std::size_t n = nodes.size(), ne = edges.size();
  const std::size_t col_u = 2 * ne, col_lambda = 2 * ne + 2 * n;
  const std::size_t row_a = n, row_b = n + 1;
  LinearProgram lp(n + 2, col_lambda + 3);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& ed = edges[e];
    lp.at(ed.i, 2 * e) = 1.0;
    lp.at(ed.j, 2 * e) = -1.0;
    lp.at(ed.j, 2 * e + 1) = 1.0;
    lp.at(ed.i, 2 * e + 1) = -1.0;
    lp.at(row_b, 2 * e) = ed.length;
    lp.at(row_b, 2 * e + 1) = ed.length;
  }
  std::vector<std::size_t> basis(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    lp.at(i, col_u + 2 * i) = 1.0;
    lp.at(i, col_u + 2 * i + 1) = -1.0;
    lp.at(row_a, col_u + 2 * i) = 1.0;
    lp.at(row_a, col_u + 2 * i + 1) = 1.0;
    lp.b[i] = nodes[i].weight;
    basis[i] = nodes[i].weight >= 0.0 ? col_u + 2 * i : col_u + 2 * i + 1;
  }
  lp.at(row_a, col_lambda) = -1.0;
  lp.at(row_a, col_lambda + 1) = 1.0;
  lp.at(row_b, col_lambda) = -1.0;
  lp.at(row_b, col_lambda + 2) = 1.0;
  lp.c[col_lambda] = 1.0;
  // Destroy-everything start: lambda equals the total variation.
  basis[row_a] = col_lambda;
  basis[row_b] = col_lambda + 2;

  const auto result = solve_lp(lp, basis);
  if (result.status != LpResult::Status::kOptimal)
    throw Error("flat metric LP did not reach optimality");
  return std::max(result.objective, 0.0);
}

double flat_metric_oracle(const MetricGraph& g, const AtomicMeasure& mu, const AtomicMeasure& nu) {
  check_binding(g, mu, nu);
  Support support(g, false);
  support.add(mu, 1.0);
  support.add(nu, -1.0);
  const auto& nodes = support.nodes();
  if (all_zero(nodes)) return 0.0;
  const auto pairs = support.all_pair_edges();
  const std::size_t n = nodes.size();

  double positive = 0.0, negative = 0.0;
  for (const auto& nd : nodes) (nd.weight > 0.0 ? positive : negative) += std::abs(nd.weight);

  // One affine piece theta * created_or_destroyed + (1 - theta) * moved of the
  // concave function theta -> min-cost(theta).
  struct Line {
    double theta, created, moved;
    double at(double t) const { return t * created + (1.0 - t) * moved; }
    double slope() const { return created - moved; }
  };
  auto evaluate = [&](double theta) {
    const std::size_t ground = n, src = n + 1, dst = n + 2;
    MinCostFlow flow(n + 3);
    for (std::size_t i = 0; i < n; ++i) {
      if (nodes[i].weight > 0.0) flow.add_edge(src, i, nodes[i].weight, 0.0);
      if (nodes[i].weight < 0.0) flow.add_edge(i, dst, -nodes[i].weight, 0.0);
    }
    flow.add_edge(src, ground, negative, 0.0);
    flow.add_edge(ground, dst, positive, 0.0);
    std::vector<std::pair<std::size_t, double>> moves;
    for (const auto& p : pairs) {
      moves.emplace_back(flow.add_edge(p.i, p.j, kInf, (1.0 - theta) * p.length), p.length);
      moves.emplace_back(flow.add_edge(p.j, p.i, kInf, (1.0 - theta) * p.length), p.length);
    }
    std::vector<std::size_t> ground_edges;
    for (std::size_t i = 0; i < n; ++i) {
      ground_edges.push_back(flow.add_edge(i, ground, kInf, theta));
      ground_edges.push_back(flow.add_edge(ground, i, kInf, theta));
    }
    flow.solve(src, dst, positive + negative);
    Line line{theta, 0.0, 0.0};
    for (const auto e : ground_edges) line.created += flow.flow(e);
    for (const auto& [e, d] : moves) line.moved += d * flow.flow(e);
    return line;
  };

  Line lo = evaluate(0.0);
  if (lo.slope() <= 0.0) return 0.0;
  Line hi = evaluate(1.0);
  if (hi.slope() >= 0.0) return hi.at(1.0);
  for (int iter = 0; iter < 200; ++iter) {
    // Both lines bound the concave function from above; their crossing is the
    // candidate maximizer.
    const double crossing = (hi.moved - lo.moved) / ((lo.created - lo.moved) - (hi.created - hi.moved));
    const double theta = std::clamp(crossing, 0.0, 1.0);
    const double bound = lo.at(theta);
    const Line mid = evaluate(theta);
    const double value = mid.at(theta);
    if (value >= bound - 1e-14 * std::max(1.0, bound) || mid.slope() == 0.0) return value;
    if (mid.slope() > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  throw Error("flat metric oracle did not converge");
}

}  // namespace netmeasure
