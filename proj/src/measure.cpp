// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "netmeasure/kernels.hpp"

namespace netmeasure {

AtomicMeasure::AtomicMeasure(const MetricGraph& g, std::vector<Atom> atoms)
    : graph_id_(g.id()), atoms_(std::move(atoms)) {
  check_on(g);
}

void AtomicMeasure::check_on(const MetricGraph& g) const {
  if (graph_id_ != g.id()) throw Error("measure is bound to a different graph");
  for (const auto& a : atoms_) {
    if (!g.contains(a.point)) throw Error("atom lies outside the graph");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
      throw Error("atom masses must be finite and non-negative");
  }
}

double BoundaryMeasure::mass(double a, double b) const {
  double total = 0.0;
  for (const auto& src : sources) {
    total += src.rate.integral(a, b);
    for (const auto& e : src.atoms)
      if (e.time >= a && e.time < b) total += e.mass;
  }
  return total;
}

bool BoundaryMeasure::empty() const {
  return std::all_of(sources.begin(), sources.end(),
                     [](const SourceData& s) { return s.rate.is_zero() && s.atoms.empty(); });
}

BoundaryMeasure BoundaryMeasure::continuous_part() const {
  BoundaryMeasure out = *this;
  for (auto& s : out.sources) s.atoms.clear();
  return out;
}

std::vector<double> BoundaryMeasure::atom_times() const {
  std::vector<double> times;
  for (const auto& s : sources)
    for (const auto& e : s.atoms) times.push_back(e.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

BoundaryMeasure BoundaryMeasure::scaled(double factor) const {
  BoundaryMeasure out = *this;
  for (auto& s : out.sources) {
    auto values = s.rate.values();
    for (double& v : values) v *= factor;
    s.rate = PiecewiseConstant(s.rate.breakpoints(), std::move(values));
    for (auto& e : s.atoms) e.mass *= factor;
  }
  return out;
}

ValidationReport validate(const MetricGraph& g, const BoundaryMeasure& sigma, double horizon) {
  ValidationReport report;
  for (const auto& s : sigma.sources) {
    const std::string& name = g.vertex_name(s.vertex);
    if (!g.is_source(s.vertex)) report.fail("boundary data at non-source vertex '" + name + "'");
    for (double v : s.rate.values())
      if (!(v >= 0.0) || !std::isfinite(v))
        report.fail("negative or non-finite emission rate at '" + name + "'");
    for (double b : s.rate.breakpoints())
      if (b < 0.0 || b > horizon) report.fail("rate breakpoint outside [0, T] at '" + name + "'");
    for (const auto& e : s.atoms) {
      if (!(e.time > 0.0 && e.time < horizon))
        report.fail("point emission time outside (0, T) at '" + name + "'");
      if (!(e.mass >= 0.0) || !std::isfinite(e.mass))
        report.fail("negative point emission mass at '" + name + "'");
    }
  }
  return report;
}

double total_mass(const AtomicMeasure& mu) {
  double total = 0.0;
  for (const auto& a : mu.atoms()) total += a.mass;
  return total;
}

double p_moment(const MetricGraph& g, const AtomicMeasure& mu, const GraphPoint& center, int p) {
  if (p != 1 && p != 2) throw Error("p-moment supports p = 1 or p = 2");
  std::vector<double> dist, mass;
  dist.reserve(mu.size());
  mass.reserve(mu.size());
  for (const auto& a : mu.atoms()) {
    dist.push_back(graph_distance(g, a.point, center));
    mass.push_back(a.mass);
  }
  return kernels::power_sum(dist, mass, p);
}

AtomicMeasure restrict(const MetricGraph& g, const AtomicMeasure& mu, ArcId arc) {
  if (index(arc) >= g.num_arcs()) throw Error("unknown arc id");
  AtomicMeasure out(g);
  for (const auto& a : mu.atoms())
    if (a.point.arc == arc) out.atoms().push_back(a);
  return out;
}

PruneResult prune(const AtomicMeasure& mu, double threshold) {
  if (!(threshold >= 0.0)) throw Error("prune threshold must be non-negative");
  PruneResult out{mu, 0.0};
  auto& atoms = out.measure.atoms();
  atoms.clear();
  for (const auto& a : mu.atoms()) {
    if (a.mass < threshold)
      out.lost += a.mass;
    else
      atoms.push_back(a);
  }
  return out;
}

AtomicMeasure normalize(const AtomicMeasure& mu) {
  AtomicMeasure out = mu;
  std::erase_if(out.atoms(), [](const Atom& a) { return a.mass == 0.0; });
  return out;
}

AtomicMeasure merge_close(const AtomicMeasure& mu, double tolerance) {
  if (!(tolerance > 0.0)) return mu;
  AtomicMeasure out = mu;
  auto& atoms = out.atoms();
  // First occurrence keeps its slot so the atom order stays deterministic.
  std::map<std::pair<Origin, std::uint32_t>, std::vector<std::size_t>> groups;
  std::vector<bool> dead(atoms.size(), false);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].origin == kNoOrigin) continue;
    auto& members = groups[{atoms[i].origin, static_cast<std::uint32_t>(atoms[i].point.arc)}];
    bool merged = false;
    for (const std::size_t j : members) {
      if (std::abs(atoms[j].point.s - atoms[i].point.s) <= tolerance) {
        atoms[j].mass += atoms[i].mass;
        dead[i] = true;
        merged = true;
        break;
      }
    }
    if (!merged) members.push_back(i);
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (!dead[i]) atoms[k++] = atoms[i];
  atoms.resize(k);
  return out;
}

AtomicMeasure scaled(const AtomicMeasure& mu, double factor) {
  AtomicMeasure out = mu;
  for (auto& a : out.atoms()) a.mass *= factor;
  return out;
}

std::vector<Atom> quadrature_atoms(ArcId arc, const PiecewiseLinear& density, double from,
                                   double to, int cells) {
  if (cells <= 0) throw Error("quadrature resolution must be positive");
  if (!(to > from) || from < 0.0) throw Error("invalid density interval");
  std::vector<Atom> out;
  const double width = (to - from) / cells;
  for (int c = 0; c < cells; ++c) {
    const double mid = from + (c + 0.5) * width;
    const double m = density(mid) * width;
    if (m < 0.0) throw Error("negative density");
    if (m > 0.0) out.push_back({{arc, mid}, m, kNoOrigin});
  }
  return out;
}

}  // namespace netmeasure
