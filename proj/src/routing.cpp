// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/routing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace netmeasure {

RoutingMatrix RoutingMatrix::with_defaults(const MetricGraph& g) const {
  RoutingMatrix out = *this;
  std::set<ArcId> has_row;
  for (const auto& [key, _] : entries_) has_row.insert(key.first);
  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    const auto& arc = g.arc(arc_id(k));
    if (!arc.head || has_row.count(arc_id(k))) continue;
    const auto& out_arcs = g.outgoing(*arc.head);
    if (out_arcs.size() == 1) out.set(arc_id(k), out_arcs.front(), PiecewiseConstant(1.0));
  }
  return out;
}

std::vector<double> RoutingMatrix::breakpoints() const {
  std::vector<double> out;
  for (const auto& [_, p] : entries_) out.insert(out.end(), p.breakpoints().begin(), p.breakpoints().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ValidationReport validate_routing(const MetricGraph& g, const RoutingMatrix& p,
                                  std::optional<double> horizon) {
  ValidationReport report;
  auto name = [&](ArcId a) { return "'" + g.arc(a).name + "'"; };

  std::map<ArcId, std::vector<const PiecewiseConstant*>> rows;
  for (const auto& [key, f] : p.entries()) {
    const auto [k, j] = key;
    if (index(k) >= g.num_arcs() || index(j) >= g.num_arcs()) {
      report.fail("routing entry references an unknown arc");
      continue;
    }
    const auto& ak = g.arc(k);
    const bool adjacent = ak.head && *ak.head == g.arc(j).tail;
    bool nonzero = false;
    for (double v : f.values()) {
      if (!(v >= 0.0 && v <= 1.0))
        report.fail("routing entry (" + name(k) + ", " + name(j) + ") has a value outside [0, 1]");
      nonzero = nonzero || v != 0.0;
    }
    if (!adjacent && nonzero)
      report.fail("routing entry (" + name(k) + ", " + name(j) + ") is nonzero between non-adjacent arcs");
    if (horizon)
      for (double b : f.breakpoints())
        if (b < 0.0 || b > *horizon)
          report.fail("routing entry (" + name(k) + ", " + name(j) + ") has a breakpoint outside [0, T]");
    if (adjacent) rows[k].push_back(&f);
  }

  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    const ArcId arc = arc_id(k);
    if (!g.arc(arc).head) continue;
    const auto it = rows.find(arc);
    if (it == rows.end()) {
      report.fail("no routing entries for arc " + name(arc));
      continue;
    }
    std::vector<double> cuts;
    for (const auto* f : it->second) cuts.insert(cuts.end(), f->breakpoints().begin(), f->breakpoints().end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // One probe per interval; right-continuity makes the left endpoint
    // representative.
    std::vector<std::pair<double, double>> intervals;
    double lo = -kInf;
    for (double c : cuts) {
      intervals.emplace_back(lo, c);
      lo = c;
    }
    intervals.emplace_back(lo, kInf);
    for (const auto& [a, b] : intervals) {
      const double probe = std::isinf(a) ? (std::isinf(b) ? 0.0 : b - 1.0) : a;
      double sum = 0.0;
      for (const auto* f : it->second) sum += (*f)(probe);
      if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "routing row " << name(arc) << " sums to " << sum << " on [" << a << ", " << b << ")";
        report.fail(msg.str());
      }
    }
  }
  return report;
}

double coefficient(const RoutingMatrix& p, ArcId from, ArcId to, double t) {
  const auto it = p.entries().find({from, to});
  if (it == p.entries().end()) return 0.0;
  return it->second(t);
}

double path_coefficient(const RoutingMatrix& p, std::span<const ArcId> path,
                        std::span<const double> exit_times) {
  if (path.empty() || exit_times.size() + 1 != path.size())
    throw Error("path_coefficient: need one exit time per junction crossing");
  double product = 1.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    product *= coefficient(p, path[k], path[k + 1], exit_times[k]);
  return product;
}

}  // namespace netmeasure
