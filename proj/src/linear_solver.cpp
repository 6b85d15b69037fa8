// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "netmeasure/flat_metric.hpp"

namespace netmeasure {

FrozenField::FrozenField(const MetricGraph& g, std::vector<SpeedProfile> profiles, double v_max)
    : g_(&g), v_max_(v_max), base_(std::move(profiles)) {
  if (base_.size() != g.num_arcs()) throw Error("frozen field needs one profile per arc");
}

FrozenField FrozenField::freeze(const MetricGraph& g, const VelocityField& field,
                                const AtomicMeasure& frozen) {
  FrozenField out(g, field.v_max);
  if (const auto* tab = std::get_if<TabulatedField>(&field.model)) {
    for (std::size_t k = 0; k < g.num_arcs(); ++k)
      out.base_.push_back(SpeedProfile::from_linear(tab->profiles.at(k), g.arc(arc_id(k)).length).clamped());
    return out;
  }
  const auto& nl = std::get<NonlocalTrafficField>(field.model);
  if (nl.kernel.k0 == 0.0) {
    for (std::size_t k = 0; k < g.num_arcs(); ++k)
      out.base_.push_back(SpeedProfile::from_linear(nl.free_flow.at(k), g.arc(arc_id(k)).length).clamped());
    return out;
  }
  auto lineages = std::make_unique<Lineages>();
  lineages->field = nl;
  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    lineages->sets.push_back(gather_interactions(g, nl, frozen, arc_id(k)));
    out.base_.push_back(nonlocal_profile(g, nl, lineages->sets.back(), arc_id(k)));
  }
  if (!nl.self_interaction) out.lineages_ = std::move(lineages);
  return out;
}

const SpeedProfile& FrozenField::profile(ArcId arc, Origin origin) const {
  const std::size_t k = index(arc);
  if (!lineages_ || origin == kNoOrigin) return base_.at(k);
  const auto& set = lineages_->sets[k];
  if (std::find(set.origin.begin(), set.origin.end(), origin) == set.origin.end()) return base_[k];
  std::lock_guard<std::mutex> guard(lineages_->lock);
  auto [it, fresh] = lineages_->cache.try_emplace({k, origin});
  if (fresh) it->second = nonlocal_profile(*g_, lineages_->field, set, arc, origin);
  return it->second;
}

ArcFlow arc_flow(const FrozenField& field, ArcId arc, double s0, double t0, double t1, Origin origin) {
  const auto motion = field.profile(arc, origin).follow(s0, t1 - t0);
  if (motion.exited) return {true, std::min(t0 + motion.time, t1), motion.s};
  return {false, t1, motion.s};
}

std::vector<Emission> source_emissions(const MetricGraph& g, const BoundaryMeasure& sigma,
                                       const std::vector<double>& cuts) {
  std::vector<Emission> out;
  for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
    const double a = cuts[w], b = cuts[w + 1];
    for (const auto& src : sigma.sources) {
      const ArcId arc = g.source_arc(src.vertex);
      const double rate_mass = src.rate.integral(a, b);
      if (rate_mass > 0.0) out.push_back({src.vertex, arc, 0.5 * (a + b), rate_mass});
      std::vector<SourceData::PointEmission> points;
      for (const auto& pe : src.atoms)
        if (pe.time >= a && pe.time < b && pe.mass > 0.0) points.push_back(pe);
      std::stable_sort(points.begin(), points.end(),
                       [](const auto& x, const auto& y) { return x.time < y.time; });
      for (const auto& pe : points) out.push_back({src.vertex, arc, pe.time, pe.mass});
    }
  }
  return out;
}

std::vector<double> window_cuts(const RoutingMatrix& p, double t0, double t1) {
  std::vector<double> cuts{t0};
  for (const double b : p.breakpoints())
    if (b > t0 && b < t1) cuts.push_back(b);
  cuts.push_back(t1);
  return cuts;
}

namespace {

class Propagator {
 public:
  Propagator(const MetricGraph& g, const FrozenField& field, const RoutingMatrix& p,
             const AdvanceOptions& options, AdvanceResult& out)
      : g_(g), field_(field), p_(p), options_(options), out_(out) {}

  // Flows one atom to t1, depth-first through every junction it reaches.
  void run(const Atom& start, double t_start, double t1) {
    struct Pending {
      Atom atom;
      double time;
    };
    std::vector<Pending> stack{{start, t_start}};
    std::size_t crossings = 0;
    while (!stack.empty()) {
      Pending cur = stack.back();
      stack.pop_back();
      const ArcId k = cur.atom.point.arc;
      const ArcFlow flow = arc_flow(field_, k, cur.atom.point.s, cur.time, t1, cur.atom.origin);
      if (!flow.exited) {
        out_.measure.add({k, flow.s}, cur.atom.mass, cur.atom.origin);
        continue;
      }
      if (++crossings > options_.max_events)
        throw Error("event cascade overflow: more than " + std::to_string(options_.max_events) +
                    " junction crossings in one lineage");
      const VertexId v = *g_.arc(k).head;
      const std::size_t parent = out_.traces.size();
      out_.traces.push_back({v, k, std::nullopt, flow.time, cur.atom.mass, kNoParent});
      const auto& outs = g_.outgoing(v);
      std::vector<Pending> children;
      for (const ArcId j : outs) {
        const double share = coefficient(p_, k, j, flow.time);
        if (share == 0.0) continue;
        const double mass = cur.atom.mass * share;
        out_.traces.push_back({v, k, j, flow.time, mass, parent});
        if (mass < options_.eps_mass) {
          out_.pruned += mass;
          continue;
        }
        children.push_back({{{j, 0.0}, mass, cur.atom.origin}, flow.time});
      }
      // Reverse so the first outgoing arc is expanded first.
      stack.insert(stack.end(), children.rbegin(), children.rend());
    }
  }

 private:
  const MetricGraph& g_;
  const FrozenField& field_;
  const RoutingMatrix& p_;
  const AdvanceOptions& options_;
  AdvanceResult& out_;
};

}  // namespace

AdvanceResult advance(const MetricGraph& g, const FrozenField& field, const RoutingMatrix& p,
                      const AtomicMeasure& mu0, const BoundaryMeasure& sigma, double t0, double t1,
                      const AdvanceOptions& options) {
  if (mu0.graph_id() != g.id()) throw Error("advance: measure is bound to a different graph");
  if (!(t1 >= t0)) throw Error("advance: window end precedes its start");
  AdvanceResult result;
  result.next_origin = options.next_origin;
  AtomicMeasure current = mu0;
  const auto cuts = window_cuts(p, t0, t1);
  for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
    const double a = cuts[w], b = cuts[w + 1];
    result.measure = AtomicMeasure(g);
    Propagator prop(g, field, p, options, result);
    for (const auto& atom : current.atoms()) prop.run(atom, a, b);
    for (const auto& e : source_emissions(g, sigma, {a, b})) {
      result.traces.push_back({e.vertex, std::nullopt, e.arc, e.time, e.mass, kNoParent});
      prop.run({{e.arc, 0.0}, e.mass, result.next_origin++}, e.time, b);
    }
    current = result.measure;
  }
  return result;
}

RepresentationReport representation_check(const MetricGraph& g, const FrozenField& field,
                                          const RoutingMatrix& p, const AtomicMeasure& mu0,
                                          const BoundaryMeasure& sigma, double t0, double t,
                                          int max_crossings) {
  struct Start {
    Atom atom;
    double time;
  };
  std::vector<Start> starts;
  for (const auto& a : mu0.atoms()) starts.push_back({a, t0});
  Origin next = 0;
  for (const auto& a : mu0.atoms())
    if (a.origin != kNoOrigin) next = std::max<Origin>(next, a.origin + 1);
  const Origin first_emitted = next;
  for (const auto& e : source_emissions(g, sigma, window_cuts(p, t0, t)))
    starts.push_back({{{e.arc, 0.0}, e.mass, next++}, e.time});

  RepresentationReport report;
  AtomicMeasure rebuilt(g);
  for (const auto& st : starts) {
    const auto paths = enumerate_paths(g, st.atom.point, max_crossings);
    report.paths += paths.size();
    double coefficient_sum = 0.0;
    for (const auto& path : paths) {
      double time = st.time;
      double coef = 1.0;
      std::optional<GraphPoint> found;
      for (std::size_t i = 0; i < path.arcs.size(); ++i) {
        const ArcId arc = path.arcs[i];
        const double s0 = i == 0 ? st.atom.point.s : 0.0;
        double theta = kInf;
        if (!found) {
          const ArcFlow flow = arc_flow(field, arc, s0, time, t, st.atom.origin);
          if (flow.exited) {
            theta = flow.time;
          } else {
            found = GraphPoint{arc, flow.s};
            // Crossings after t still weight the path.
            const auto later = field.profile(arc, st.atom.origin).follow(flow.s, kInf);
            if (later.exited) theta = t + later.time;
          }
        } else if (!std::isinf(time)) {
          const auto later = field.profile(arc, st.atom.origin).follow(s0, kInf);
          if (later.exited) theta = time + later.time;
        }
        if (i + 1 < path.arcs.size()) {
          coef *= coefficient(p, arc, path.arcs[i + 1], theta);
          time = theta;
        } else if (path.truncated && !found) {
          throw Error("path enumeration overflow: raise max_crossings");
        }
      }
      coefficient_sum += coef;
      if (found && coef > 0.0) rebuilt.add(*found, st.atom.mass * coef, st.atom.origin);
    }
    report.coefficient_defect = std::max(report.coefficient_defect, std::abs(coefficient_sum - 1.0));
  }

  AdvanceOptions options;
  options.next_origin = first_emitted;
  const auto advanced = advance(g, field, p, mu0, sigma, t0, t, options);
  report.discrepancy = bl_dual_norm_diff(g, rebuilt, advanced.measure);
  return report;
}

TransmissionReport check_transmission(const RoutingMatrix& p, const std::vector<TraceEvent>& traces) {
  TransmissionReport report;
  std::vector<double> child_sum(traces.size(), 0.0);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& e = traces[i];
    if (e.parent == kNoParent) {
      if (e.from && !e.to) ++report.arrivals;
      continue;
    }
    const auto& parent = traces.at(e.parent);
    if (parent.vertex != e.vertex || parent.time != e.time || parent.from != e.from || !e.to) {
      report.child_error = kInf;
      continue;
    }
    const double expected = parent.mass * coefficient(p, *e.from, *e.to, e.time);
    report.child_error = std::max(report.child_error, std::abs(e.mass - expected));
    child_sum[e.parent] += e.mass;
  }
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& e = traces[i];
    if (e.parent != kNoParent || !e.from || e.to) continue;
    const double err = std::abs(child_sum[i] - e.mass) / std::max(e.mass, 1e-300);
    report.balance_error = std::max(report.balance_error, err);
  }
  return report;
}

}  // namespace netmeasure
