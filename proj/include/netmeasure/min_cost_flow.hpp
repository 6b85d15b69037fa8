// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace netmeasure {

/// Successive-shortest-path min-cost flow with real capacities and
/// non-negative costs. Intended for small dense networks (tens of nodes).
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : adj_(nodes) {}

  /// Returns the edge handle; `capacity` may be +inf.
  std::size_t add_edge(std::size_t from, std::size_t to, double capacity, double cost);

  struct Result {
    double flow = 0.0;
    double cost = 0.0;
  };

  /// Pushes up to `limit` units from `source` to `sink` at minimum cost.
  Result solve(std::size_t source, std::size_t sink, double limit);

  double flow(std::size_t edge) const { return edges_[2 * edge].flow; }

 private:
  struct Edge {
    std::size_t to;
    double capacity;
    double cost;
    double flow;
  };
  double residual(const Edge& e) const { return e.capacity - e.flow; }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace netmeasure
