// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "netmeasure/flat_metric.hpp"

namespace netmeasure {

std::size_t worker_count() {
  if (const char* env = std::getenv("NETMEASURE_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool ConvergenceReport::nonincreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].error > rows[i - 1].error) return false;
  return true;
}

ConvergenceReport convergence_study(const Problem& problem, const std::vector<int>& levels,
                                    std::size_t workers) {
  if (levels.empty()) throw Error("convergence study needs at least one level");
  if (!std::is_sorted(levels.begin(), levels.end())) throw Error("levels must be ascending");
  std::vector<int> needed;
  for (const int n : levels) {
    needed.push_back(n);
    needed.push_back(n + 1);
  }
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

  std::vector<Trajectory> trajs(needed.size());
  parallel_for(needed.size(), workers, [&](std::size_t i) { trajs[i] = solve(problem, needed[i]); });
  auto find = [&](int level) -> const Trajectory& {
    return trajs[static_cast<std::size_t>(std::find(needed.begin(), needed.end(), level) - needed.begin())];
  };

  const MetricGraph& g = *problem.graph;
  ConvergenceReport report;
  for (const int n : levels) {
    const auto coarse = find(n).grid();
    const auto fine = find(n + 1).grid();
    std::vector<double> dist(coarse.size());
    parallel_for(coarse.size(), workers, [&](std::size_t i) {
      dist[i] = bl_dual_norm_diff(g, coarse[i]->measure, fine[2 * i]->measure);
    });
    ConvergenceRow row;
    row.level = n;
    row.error = *std::max_element(dist.begin(), dist.end());
    row.ratio = report.rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : row.error / report.rows.back().error;
    report.rows.push_back(row);
  }
  return report;
}

Problem perturbed(const Problem& problem, Perturbation kind, double delta) {
  Problem out = problem;
  const MetricGraph& g = *problem.graph;
  if (kind == Perturbation::kShift) {
    for (auto& a : out.m0.atoms()) a.point.s = std::min(a.point.s + delta, g.arc(a.point.arc).length);
  } else {
    out.m0 = scaled(problem.m0, 1.0 + delta);
    out.sigma = problem.sigma.scaled(1.0 + delta);
  }
  return out;
}

double input_distance(const Problem& a, const Problem& b, Perturbation kind, double delta) {
  double d = bl_dual_norm_diff(*a.graph, a.m0, b.m0);
  if (kind == Perturbation::kScale) d += std::abs(delta) * a.sigma.total(a.horizon);
  return d;
}

std::vector<DependenceRow> dependence_study(const Problem& problem, Perturbation kind,
                                            const std::vector<double>& deltas, int level,
                                            std::size_t workers) {
  const Trajectory base = solve(problem, level);
  const auto base_grid = base.grid();
  std::vector<DependenceRow> rows(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const Problem other = perturbed(problem, kind, deltas[i]);
    const Trajectory traj = solve(other, level);
    const auto grid = traj.grid();
    std::vector<double> dist(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t n) {
      dist[n] = bl_dual_norm_diff(*problem.graph, base_grid[n]->measure, grid[n]->measure);
    });
    DependenceRow& row = rows[i];
    row.delta = deltas[i];
    row.input_distance = input_distance(problem, other, kind, deltas[i]);
    row.sup_distance = *std::max_element(dist.begin(), dist.end());
    row.constant = row.input_distance > 0.0 ? row.sup_distance / row.input_distance
                   : row.sup_distance == 0.0 ? 0.0
                                             : kInf;
  }
  return rows;
}

bool RegularityReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const RegularityRow& r) { return r.pass; });
}

RegularityReport time_regularity_check(const Problem& problem, const Trajectory& traj,
                                       std::size_t workers) {
  const MetricGraph& g = *problem.graph;
  RegularityReport report;
  report.constant =
      (1.0 + problem.field.v_max) * (total_mass(problem.m0) + problem.sigma.total(problem.horizon));
  const auto grid = traj.grid();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) pairs.emplace_back(i, j);
  report.rows.resize(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t r) {
    const auto [i, j] = pairs[r];
    RegularityRow& row = report.rows[r];
    row.s = grid[i]->time;
    row.t = grid[j]->time;
    row.lhs = bl_dual_norm_diff(g, grid[i]->measure, grid[j]->measure);
    row.rhs = problem.sigma.mass(row.s, row.t) + report.constant * (row.t - row.s);
    // The LP value carries simplex round-off of a few ulps.
    row.pass = row.lhs <= row.rhs * (1.0 + 1e-12) + 1e-15;
  });
  return report;
}

double moment_bound(const Problem& problem, const GraphPoint& center, int p, double t) {
  const MetricGraph& g = *problem.graph;
  const double reach = problem.field.v_max * t;
  double bound = 0.0;
  for (const auto& a : problem.m0.atoms())
    bound += a.mass * std::pow(graph_distance(g, a.point, center) + reach, p);
  for (const auto& src : problem.sigma.sources) {
    const GraphPoint x{g.source_arc(src.vertex), 0.0};
    SourceData only = src;
    BoundaryMeasure one{{only}};
    bound += one.mass(0.0, t) * std::pow(graph_distance(g, x, center) + reach, p);
  }
  return bound;
}

std::vector<MomentRow> moment_rows(const Problem& problem, const Trajectory& traj,
                                   const GraphPoint& center, int p) {
  std::vector<MomentRow> rows;
  for (const Snapshot* s : traj.grid())
    rows.push_back({traj.level, s->time, p_moment(*problem.graph, s->measure, center, p),
                    moment_bound(problem, center, p, s->time)});
  return rows;
}

}  // namespace netmeasure
