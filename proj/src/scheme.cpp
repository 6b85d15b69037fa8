// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace netmeasure {

std::vector<const Snapshot*> Trajectory::grid() const {
  std::vector<const Snapshot*> out;
  for (const auto& s : snapshots)
    if (s.on_grid) out.push_back(&s);
  return out;
}

double Trajectory::pruned_until(std::size_t snapshot) const {
  double total = 0.0;
  for (std::size_t w = 0; w < snapshot && w < windows.size(); ++w) total += windows[w].pruned;
  return total;
}

double grid_time(double horizon, int level, std::size_t n) {
  return horizon * static_cast<double>(n) / std::ldexp(1.0, level);
}

std::vector<Boundary> scheme_boundaries(double horizon, int level, const BoundaryMeasure& sigma) {
  if (level < 0) throw Error("scheme level must be non-negative");
  if (level > 30) throw Error("scheme level too large");
  std::vector<Boundary> out;
  const std::size_t steps = std::size_t{1} << level;
  for (std::size_t n = 0; n <= steps; ++n) out.push_back({grid_time(horizon, level, n), true});
  for (const double t : sigma.atom_times())
    if (t > 0.0 && t < horizon) out.push_back({t, false});
  std::stable_sort(out.begin(), out.end(),
                   [](const Boundary& a, const Boundary& b) { return a.time < b.time; });
  // A point emission landing on a grid time adds no boundary.
  std::vector<Boundary> unique;
  for (const auto& b : out) {
    if (!unique.empty() && unique.back().time == b.time) {
      unique.back().on_grid = unique.back().on_grid || b.on_grid;
      continue;
    }
    unique.push_back(b);
  }
  return unique;
}

Trajectory solve_on_boundaries(const Problem& problem, const std::vector<Boundary>& boundaries,
                               int level) {
  const MetricGraph& g = *problem.graph;
  if (boundaries.size() < 2) throw Error("scheme needs at least one window");
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    if (!(boundaries[i].time > boundaries[i - 1].time))
      throw Error("scheme boundaries must be strictly increasing");

  Trajectory traj;
  traj.level = level;
  traj.horizon = boundaries.back().time;

  AtomicMeasure state = problem.m0;
  Origin next_origin = 0;
  for (const auto& a : state.atoms())
    if (a.origin != kNoOrigin) next_origin = std::max<Origin>(next_origin, a.origin + 1);
  for (auto& a : state.atoms())
    if (a.origin == kNoOrigin) a.origin = next_origin++;

  const BoundaryMeasure continuous = problem.sigma.continuous_part();
  std::optional<FrozenField> fixed;
  if (problem.field.measure_independent())
    fixed.emplace(FrozenField::freeze(g, problem.field, AtomicMeasure(g)));

  AdvanceOptions adv;
  adv.eps_mass = problem.options.eps_mass;
  adv.max_events = problem.options.max_events;
  for (std::size_t w = 0; w + 1 < boundaries.size(); ++w) {
    const double t0 = boundaries[w].time, t1 = boundaries[w + 1].time;
    traj.snapshots.push_back({t0, boundaries[w].on_grid, state});

    WindowRecord rec;
    rec.t0 = t0;
    rec.t1 = t1;
    for (const auto& src : problem.sigma.sources) {
      const ArcId arc = g.source_arc(src.vertex);
      for (const auto& pe : src.atoms) {
        if (pe.time != t0 || !(pe.mass > 0.0)) continue;
        state.add({arc, 0.0}, pe.mass, next_origin++);
        rec.traces.push_back({src.vertex, std::nullopt, arc, t0, pe.mass, kNoParent});
      }
    }
    rec.frozen_mass = total_mass(state);

    adv.next_origin = next_origin;
    std::optional<FrozenField> local;
    const FrozenField& frozen =
        fixed ? *fixed : local.emplace(FrozenField::freeze(g, problem.field, state));
    auto result = advance(g, frozen, problem.routing, state, continuous, t0, t1, adv);
    next_origin = result.next_origin;
    rec.pruned = result.pruned;
    const std::size_t offset = rec.traces.size();
    for (auto& e : result.traces) {
      if (e.parent != kNoParent) e.parent += offset;
      rec.traces.push_back(e);
    }
    state = merge_close(result.measure, problem.options.eps_merge);
    traj.windows.push_back(std::move(rec));
  }
  traj.snapshots.push_back({boundaries.back().time, boundaries.back().on_grid, state});
  return traj;
}

Trajectory solve(const Problem& problem, int level) {
  return solve_on_boundaries(problem, scheme_boundaries(problem.horizon, level, problem.sigma), level);
}

}  // namespace netmeasure
