// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "netmeasure/flat_metric.hpp"

namespace netmeasure {

double Kernel::operator()(double d) const {
  if (d < 0.0 || d > radius) return 0.0;
  return shape == KernelShape::kConstant ? k0 : k0 - d * (k0 / radius);
}

bool VelocityField::measure_independent() const {
  if (std::holds_alternative<TabulatedField>(model)) return true;
  return std::get<NonlocalTrafficField>(model).kernel.k0 == 0.0;
}

VelocityField with_default_alpha(const MetricGraph& g, VelocityField field) {
  auto* nl = std::get_if<NonlocalTrafficField>(&field.model);
  if (nl == nullptr) return field;
  std::set<ArcId> has_row;
  for (const auto& [key, _] : nl->alpha) has_row.insert(key.first);
  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    const auto& arc = g.arc(arc_id(k));
    if (!arc.head || has_row.count(arc_id(k))) continue;
    const auto& out = g.outgoing(*arc.head);
    for (const ArcId j : out) nl->alpha[{arc_id(k), j}] = 1.0 / static_cast<double>(out.size());
  }
  return field;
}

namespace {

void check_profiles(const MetricGraph& g, const std::vector<PiecewiseLinear>& profiles,
                    double v_max, const char* what, ValidationReport& report) {
  if (profiles.size() != g.num_arcs()) {
    report.fail(std::string(what) + " needs one profile per arc");
    return;
  }
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    if (profiles[k].min_value() < 0.0)
      report.fail(std::string(what) + " on arc '" + g.arc(arc_id(k)).name + "' is negative");
    if (profiles[k].max_value() > v_max)
      report.fail(std::string(what) + " on arc '" + g.arc(arc_id(k)).name + "' exceeds v_max");
  }
}

}  // namespace

ValidationReport validate_field(const MetricGraph& g, const VelocityField& field) {
  ValidationReport report;
  if (!(field.v_max > 0.0) || !std::isfinite(field.v_max)) report.fail("v_max must be positive and finite");
  if (const auto* tab = std::get_if<TabulatedField>(&field.model)) {
    check_profiles(g, tab->profiles, field.v_max, "speed profile", report);
    return report;
  }
  const auto& nl = std::get<NonlocalTrafficField>(field.model);
  check_profiles(g, nl.free_flow, field.v_max, "free-flow speed", report);
  const Kernel& k = nl.kernel;
  if (!(k.k0 >= 0.0) || !std::isfinite(k.k0)) report.fail("kernel peak k0 must be non-negative");
  if (!(k.radius > 0.0)) report.fail("visual radius must be positive");
  if (k.radius > g.min_arc_length()) report.fail("visual radius exceeds the minimum arc length");

  std::map<ArcId, double> row_sum;
  for (const auto& [key, a] : nl.alpha) {
    const auto [from, to] = key;
    if (index(from) >= g.num_arcs() || index(to) >= g.num_arcs()) {
      report.fail("alpha weight references an unknown arc");
      continue;
    }
    const auto& arc = g.arc(from);
    const std::string pair = "('" + arc.name + "', '" + g.arc(to).name + "')";
    if (!(a >= 0.0 && a <= 1.0)) report.fail("alpha weight " + pair + " is outside [0, 1]");
    if (!arc.head || *arc.head != g.arc(to).tail) {
      if (a != 0.0) report.fail("alpha weight " + pair + " joins non-adjacent arcs");
      continue;
    }
    row_sum[from] += a;
  }
  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    if (!g.arc(arc_id(k)).head) continue;
    const auto it = row_sum.find(arc_id(k));
    if (it == row_sum.end() || std::abs(it->second - 1.0) > 1e-12)
      report.fail("alpha weights out of arc '" + g.arc(arc_id(k)).name + "' do not sum to 1");
  }
  return report;
}

InteractionSet gather_interactions(const MetricGraph& g, const NonlocalTrafficField& field,
                                   const AtomicMeasure& mu, ArcId arc) {
  InteractionSet set;
  const auto& a = g.arc(arc);
  for (const auto& atom : mu.atoms()) {
    if (atom.point.arc == arc) {
      set.y.push_back(atom.point.s);
      set.w.push_back(atom.mass);
      set.origin.push_back(atom.origin);
      continue;
    }
    if (!a.head || g.arc(atom.point.arc).tail != *a.head) continue;
    if (atom.point.s > field.kernel.radius) continue;
    const auto it = field.alpha.find({arc, atom.point.arc});
    const double alpha = it == field.alpha.end() ? 0.0 : it->second;
    if (alpha == 0.0) continue;
    set.y.push_back(a.length + atom.point.s);
    set.w.push_back(alpha * atom.mass);
    set.origin.push_back(atom.origin);
  }
  return set;
}

SpeedProfile nonlocal_profile(const MetricGraph& g, const NonlocalTrafficField& field,
                              const InteractionSet& set, ArcId arc, Origin exclude) {
  const double length = g.arc(arc).length;
  const PiecewiseLinear& vf = field.free_flow.at(index(arc));
  const Kernel& k = field.kernel;
  if (k.k0 == 0.0 || set.y.empty()) return SpeedProfile::from_linear(vf, length).clamped();

  std::vector<double> w = set.w;
  std::vector<double> xs{0.0};
  for (const auto& knot : vf.knots())
    if (knot.x > 0.0 && knot.x < length) xs.push_back(knot.x);
  for (std::size_t i = 0; i < set.y.size(); ++i) {
    if (exclude != kNoOrigin && set.origin[i] == exclude) {
      w[i] = 0.0;
      continue;
    }
    for (const double b : {set.y[i] - k.radius, set.y[i]})
      if (b > 0.0 && b < length) xs.push_back(b);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // The set of atoms inside the window is fixed on each piece, so one kernel
  // sum at the midpoint gives the interaction and its slope there.
  const double slope_per_weight = k.shape == KernelShape::kLinear ? k.k0 / k.radius : 0.0;
  std::vector<SpeedProfile::Piece> pieces;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double end = i + 1 < xs.size() ? xs[i + 1] : length;
    const double mid = std::isinf(end) ? x + k.radius : 0.5 * (x + end);
    const auto sum = kernels::window_sum(k.shape, k.k0, k.radius, set.y, w, mid);
    const double vf_x = vf(x);
    const double vf_slope = std::isinf(end) ? 0.0 : (vf(end) - vf_x) / (end - x);
    const double inter_slope = slope_per_weight * sum.weight;
    const double inter_x = sum.value + inter_slope * (x - mid);
    pieces.push_back({x, vf_x - inter_x, vf_slope - inter_slope});
  }
  return SpeedProfile(length, std::move(pieces)).clamped();
}

double interaction_speed(const MetricGraph& g, const NonlocalTrafficField& field,
                         const AtomicMeasure& mu, const GraphPoint& x) {
  if (field.kernel.k0 == 0.0) return 0.0;
  const auto set = gather_interactions(g, field, mu, x.arc);
  const Kernel& k = field.kernel;
  return kernels::window_sum(k.shape, k.k0, k.radius, set.y, set.w, x.s).value;
}

double eval(const MetricGraph& g, const VelocityField& field, const AtomicMeasure& mu,
            const GraphPoint& x) {
  if (const auto* tab = std::get_if<TabulatedField>(&field.model))
    return tab->profiles.at(index(x.arc))(x.s);
  const auto& nl = std::get<NonlocalTrafficField>(field.model);
  return std::max(nl.free_flow.at(index(x.arc))(x.s) - interaction_speed(g, nl, mu, x), 0.0);
}

HypothesisReport check_hypotheses(const MetricGraph& g, const VelocityField& field,
                                  const HypothesisSample& sample) {
  if (sample.points_per_arc < 2) throw Error("hypothesis sample needs at least 2 points per arc");
  if (sample.measure_pairs < 1) throw Error("hypothesis sample needs at least one measure pair");

  auto extent = [&](ArcId a) {
    const double len = g.arc(a).length;
    return std::isinf(len) ? sample.unbounded_extent : len;
  };
  std::vector<std::vector<GraphPoint>> grid(g.num_arcs());
  for (std::size_t k = 0; k < g.num_arcs(); ++k) {
    const double ext = extent(arc_id(k));
    for (int i = 0; i < sample.points_per_arc; ++i)
      grid[k].push_back({arc_id(k), ext * i / (sample.points_per_arc - 1)});
  }

  std::mt19937_64 rng(sample.seed);
  std::uniform_int_distribution<std::size_t> pick_arc(0, g.num_arcs() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_measure = [&] {
    AtomicMeasure m(g);
    for (int i = 0; i < sample.atoms_per_measure; ++i) {
      const ArcId a = arc_id(pick_arc(rng));
      const double s = extent(a) * unit(rng);
      const double mass = sample.max_atom_mass * (1.0 - unit(rng));
      m.add({a, s}, mass, static_cast<Origin>(i));
    }
    return m;
  };

  HypothesisReport report;
  report.v_max = field.v_max;
  const auto* nl = std::get_if<NonlocalTrafficField>(&field.model);
  for (int pair = 0; pair < sample.measure_pairs; ++pair) {
    const AtomicMeasure m1 = random_measure();
    const AtomicMeasure m2 = random_measure();
    double sup_diff = 0.0;
    for (std::size_t k = 0; k < g.num_arcs(); ++k) {
      double prev1 = 0.0, prev2 = 0.0;
      for (std::size_t i = 0; i < grid[k].size(); ++i) {
        const GraphPoint& x = grid[k][i];
        const double v1 = eval(g, field, m1, x);
        const double v2 = eval(g, field, m2, x);
        report.max_speed = std::max({report.max_speed, v1, v2});
        sup_diff = std::max(sup_diff, std::abs(v1 - v2));
        if (i > 0) {
          const double h = x.s - grid[k][i - 1].s;
          report.h2_quotient =
              std::max({report.h2_quotient, std::abs(v1 - prev1) / h, std::abs(v2 - prev2) / h});
        }
        prev1 = v1;
        prev2 = v2;
      }
      for (const AtomicMeasure* m : {&m1, &m2}) {
        const SpeedProfile profile =
            nl ? nonlocal_profile(g, *nl, gather_interactions(g, *nl, *m, arc_id(k)), arc_id(k))
               : SpeedProfile::from_linear(std::get<TabulatedField>(field.model).profiles[k],
                                           g.arc(arc_id(k)).length);
        report.h2_piecewise = std::max(report.h2_piecewise, profile.max_abs_slope());
      }
    }
    const double dist = bl_dual_norm_diff(g, m1, m2);
    if (dist > 0.0) report.h3_constant = std::max(report.h3_constant, sup_diff / dist);
  }
  return report;
}

}  // namespace netmeasure
