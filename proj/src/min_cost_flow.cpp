// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/min_cost_flow.hpp"

#include <algorithm>
#include <limits>

#include "netmeasure/types.hpp"

namespace netmeasure {

std::size_t MinCostFlow::add_edge(std::size_t from, std::size_t to, double capacity, double cost) {
  if (cost < 0.0) throw Error("min-cost flow requires non-negative edge costs");
  const std::size_t id = edges_.size() / 2;
  adj_.at(from).push_back(edges_.size());
  edges_.push_back({to, capacity, cost, 0.0});
  adj_.at(to).push_back(edges_.size());
  edges_.push_back({from, 0.0, -cost, 0.0});
  return id;
}

MinCostFlow::Result MinCostFlow::solve(std::size_t source, std::size_t sink, double limit) {
  const std::size_t n = adj_.size();
  constexpr double kEps = 1e-15;
  Result result;
  // Johnson potentials keep reduced costs non-negative, so each search is a
  // dense Dijkstra. Round-off can leave reduced costs at -1e-17; they are
  // clamped to zero, which keeps the search finite.
  std::vector<double> potential(n, 0.0), dist(n);
  std::vector<std::size_t> via(n);
  std::vector<bool> done(n);

  while (result.flow < limit) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), false);
    dist[source] = 0.0;
    for (;;) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
      if (u == n) break;
      done[u] = true;
      for (const std::size_t ei : adj_[u]) {
        const Edge& e = edges_[ei];
        if (residual(e) <= kEps || done[e.to]) continue;
        const double reduced = std::max(e.cost + potential[u] - potential[e.to], 0.0);
        if (dist[u] + reduced < dist[e.to]) {
          dist[e.to] = dist[u] + reduced;
          via[e.to] = ei;
        }
      }
    }
    if (dist[sink] == kInf) break;
    for (std::size_t v = 0; v < n; ++v)
      if (dist[v] < kInf) potential[v] += dist[v];

    double push = limit - result.flow;
    double path_cost = 0.0;
    for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
      push = std::min(push, residual(edges_[via[v]]));
      path_cost += edges_[via[v]].cost;
    }
    if (push <= kEps) break;
    for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
      edges_[via[v]].flow += push;
      edges_[via[v] ^ 1].flow -= push;
    }
    result.flow += push;
    result.cost += push * path_cost;
  }
  return result;
}

}  // namespace netmeasure
