// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "netmeasure/scheme.hpp"

namespace netmeasure {

/// Worker count for study fan-out: NETMEASURE_WORKERS if set, else the
/// hardware concurrency.
std::size_t worker_count();

/// Runs fn(0..n-1) on up to `workers` threads. Results must be written to
/// per-index slots so the caller can reduce them in order.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

struct ConvergenceRow {
  int level = 0;
  /// max over level-N grid times of ||m^N_t - m^{N+1}_t||_BL.
  double error = 0.0;
  /// error / previous row's error; NaN on the first row.
  double ratio = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;

  bool nonincreasing() const;
};

/// Solves every level in `levels` and its successor, then compares
/// consecutive levels on the coarser grid.
ConvergenceReport convergence_study(const Problem& problem, const std::vector<int>& levels,
                                    std::size_t workers = worker_count());

enum class Perturbation {
  /// Every initial atom moved downstream by delta (clamped to its arc).
  kShift,
  /// m0 and sigma multiplied by 1 + delta.
  kScale,
};

struct DependenceRow {
  double delta = 0.0;
  double input_distance = 0.0;
  double sup_distance = 0.0;
  /// sup_distance / input_distance; 0 when both vanish.
  double constant = 0.0;
};

Problem perturbed(const Problem& problem, Perturbation kind, double delta);

/// Input distance between the problems: ||m0 - m0'||_BL + ||sigma - sigma'||.
/// The boundary term is exact for the two supported perturbations.
double input_distance(const Problem& a, const Problem& b, Perturbation kind, double delta);

std::vector<DependenceRow> dependence_study(const Problem& problem, Perturbation kind,
                                            const std::vector<double>& deltas, int level,
                                            std::size_t workers = worker_count());

struct RegularityRow {
  double s = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

struct RegularityReport {
  double constant = 0.0;
  std::vector<RegularityRow> rows;

  bool pass() const;
};

/// ||m_t - m_s||_BL <= sigma([s, t)) + C (t - s) over all grid pairs, with
/// C = (1 + V_max)(||m0|| + ||sigma||).
RegularityReport time_regularity_check(const Problem& problem, const Trajectory& traj,
                                       std::size_t workers = worker_count());

struct MomentRow {
  int level = 0;
  double t = 0.0;
  double moment = 0.0;
  double bound = 0.0;
};

/// Growth bound for the p-moment: every unit of mass moves at most V_max t
/// away from where it started or entered.
double moment_bound(const Problem& problem, const GraphPoint& center, int p, double t);

std::vector<MomentRow> moment_rows(const Problem& problem, const Trajectory& traj,
                                   const GraphPoint& center, int p);

}  // namespace netmeasure
