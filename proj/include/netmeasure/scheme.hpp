// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "netmeasure/graph.hpp"
#include "netmeasure/linear_solver.hpp"
#include "netmeasure/measure.hpp"
#include "netmeasure/routing.hpp"
#include "netmeasure/velocity.hpp"

namespace netmeasure {

struct SchemeOptions {
  double eps_mass = 0.0;
  double eps_merge = 1e-12;
  std::size_t max_events = 100000;
};

/// Everything the scheme needs, independent of the level.
struct Problem {
  std::shared_ptr<const MetricGraph> graph;
  VelocityField field;
  RoutingMatrix routing;
  AtomicMeasure m0;
  BoundaryMeasure sigma;
  double horizon = 1.0;
  SchemeOptions options;
};

struct Snapshot {
  double time = 0.0;
  /// True at t = n T / 2^N; false at extra point-emission boundaries.
  bool on_grid = true;
  /// State before any point emission at `time` is injected.
  AtomicMeasure measure;
};

struct WindowRecord {
  double t0 = 0.0;
  double t1 = 0.0;
  double pruned = 0.0;
  /// Total mass of the measure the velocity was frozen on.
  double frozen_mass = 0.0;
  std::vector<TraceEvent> traces;
};

struct Trajectory {
  int level = 0;
  double horizon = 0.0;
  std::vector<Snapshot> snapshots;
  std::vector<WindowRecord> windows;

  /// Snapshots at grid times, in time order.
  std::vector<const Snapshot*> grid() const;
  /// Pruned mass over all windows ending at or before snapshot i.
  double pruned_until(std::size_t snapshot) const;
};

struct Boundary {
  double time;
  bool on_grid;
};

/// n T / 2^N for n = 0..2^N.
double grid_time(double horizon, int level, std::size_t n);

/// The level-N grid merged with the point-emission times of sigma.
std::vector<Boundary> scheme_boundaries(double horizon, int level, const BoundaryMeasure& sigma);

/// Semi-discrete scheme on explicit window boundaries: at each boundary the
/// point emissions at that time are injected, the velocity is frozen on the
/// current state and the linear problem is advanced to the next boundary.
Trajectory solve_on_boundaries(const Problem& problem, const std::vector<Boundary>& boundaries,
                               int level = 0);

/// Throws Error for level < 0.
Trajectory solve(const Problem& problem, int level);

}  // namespace netmeasure
