// SPDX-License-Identifier: Apache-2.0
// Independent reference computations used by the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "netmeasure/graph.hpp"
#include "netmeasure/measure.hpp"

namespace oracle {

using netmeasure::ArcId;
using netmeasure::GraphPoint;
using netmeasure::MetricGraph;

// Shortest path between x and y on the graph refined by inserting x and y as
// extra nodes, by Floyd-Warshall over explicit edges. Unbounded arcs get a
// far-away dummy head so that points on them are reachable.
inline std::optional<double> refined_distance(const MetricGraph& g, const GraphPoint& x,
                                              const GraphPoint& y, bool directed) {
  const std::size_t nv = g.num_vertices();
  const std::size_t nx = nv, ny = nv + 1, n = nv + 2 + g.num_arcs();
  const double inf = netmeasure::kInf;
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  auto edge = [&](std::size_t a, std::size_t b, double w) {
    d[a * n + b] = std::min(d[a * n + b], w);
    if (!directed) d[b * n + a] = std::min(d[b * n + a], w);
  };
  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    const auto& arc = g.arc(netmeasure::arc_id(k));
    const std::size_t tail = netmeasure::index(arc.tail);
    const std::size_t head = arc.head ? netmeasure::index(*arc.head) : nv + 2 + k;
    const double len = arc.head ? arc.length : 1e6;
    // Points on this arc, sorted by coordinate, chained tail -> ... -> head.
    std::vector<std::pair<double, std::size_t>> line{{0.0, tail}};
    if (x.arc == netmeasure::arc_id(k)) line.emplace_back(x.s, nx);
    if (y.arc == netmeasure::arc_id(k)) line.emplace_back(y.s, ny);
    line.emplace_back(len, head);
    std::sort(line.begin(), line.end());
    for (std::size_t i = 1; i < line.size(); ++i) {
      edge(line[i - 1].second, line[i].second, line[i].first - line[i - 1].first);
      // Coincident points are one point, whatever the orientation.
      if (line[i].first == line[i - 1].first) edge(line[i].second, line[i - 1].second, 0.0);
    }
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i * n + m] + d[m * n + j] < d[i * n + j]) d[i * n + j] = d[i * n + m] + d[m * n + j];
  const double out = d[nx * n + ny];
  if (std::isinf(out)) return std::nullopt;
  return out;
}

// Random point; unbounded arcs are sampled on [0, extent]. Vertex aliases
// (s = 0 or s = L) appear with small probability.
inline GraphPoint random_point(const MetricGraph& g, std::mt19937_64& rng, double extent = 3.0) {
  std::uniform_int_distribution<std::size_t> pick(0, g.num_arcs() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const ArcId a = netmeasure::arc_id(pick(rng));
  const double len = g.arc(a).length;
  const double top = std::isinf(len) ? extent : len;
  const double r = unit(rng);
  if (r < 0.05) return {a, 0.0};
  if (r < 0.1 && !std::isinf(len)) return {a, len};
  return {a, top * unit(rng)};
}

inline netmeasure::AtomicMeasure random_measure(const MetricGraph& g, std::mt19937_64& rng,
                                                int max_atoms) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  netmeasure::AtomicMeasure m(g);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) m.add(random_point(g, rng), 1.0 - unit(rng), static_cast<netmeasure::Origin>(i));
  return m;
}

}  // namespace oracle
