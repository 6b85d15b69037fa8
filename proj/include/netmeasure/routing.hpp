// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "netmeasure/graph.hpp"
#include "netmeasure/piecewise.hpp"

namespace netmeasure {

/// Junction distribution coefficients p_kj(t): the fraction of mass leaving
/// arc k into arc j at time t. Entries are right-continuous step functions.
class RoutingMatrix {
 public:
  using Key = std::pair<ArcId, ArcId>;

  void set(ArcId from, ArcId to, PiecewiseConstant p) { entries_[{from, to}] = std::move(p); }
  const std::map<Key, PiecewiseConstant>& entries() const { return entries_; }

  /// Fills in p = 1 for every bounded arc whose head has a single outgoing
  /// arc and which has no explicit entries.
  RoutingMatrix with_defaults(const MetricGraph& g) const;

  /// All breakpoints of all entries, sorted and deduplicated.
  std::vector<double> breakpoints() const;

 private:
  std::map<Key, PiecewiseConstant> entries_;
};

/// Checks support (k must feed j), value range and row stochasticity on
/// every interval between breakpoints. Breakpoints must lie in [0, horizon]
/// when a horizon is given.
ValidationReport validate_routing(const MetricGraph& g, const RoutingMatrix& p,
                                  std::optional<double> horizon = std::nullopt);

/// p_kj(t); 0 for pairs without an entry.
double coefficient(const RoutingMatrix& p, ArcId from, ArcId to, double t);

/// Product of p_{j_k j_k+1}(theta_k) along a path. Throws when
/// exit_times.size() != path.size() - 1.
double path_coefficient(const RoutingMatrix& p, std::span<const ArcId> path,
                        std::span<const double> exit_times);

}  // namespace netmeasure
