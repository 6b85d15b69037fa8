// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "netmeasure/graph.hpp"
#include "netmeasure/piecewise.hpp"

namespace netmeasure {

struct Atom {
  GraphPoint point;
  double mass = 0.0;
  Origin origin = kNoOrigin;
};

/// Finite positive measure on a graph, stored as weighted atoms.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(const MetricGraph& g) : graph_id_(g.id()) {}
  AtomicMeasure(const MetricGraph& g, std::vector<Atom> atoms);

  std::uint64_t graph_id() const { return graph_id_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<Atom>& atoms() { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  void add(const GraphPoint& p, double mass, Origin origin = kNoOrigin) {
    atoms_.push_back({p, mass, origin});
  }

  /// Throws unless every atom lies on `g` with finite non-negative mass.
  void check_on(const MetricGraph& g) const;

 private:
  std::uint64_t graph_id_ = 0;
  std::vector<Atom> atoms_;
};

/// Boundary data at one source vertex: an emission rate (mass per unit time)
/// plus finitely many point emissions.
struct SourceData {
  struct PointEmission {
    double time;
    double mass;
  };
  VertexId vertex{};
  PiecewiseConstant rate;
  std::vector<PointEmission> atoms;
};

struct BoundaryMeasure {
  std::vector<SourceData> sources;

  /// sigma([a, b)) summed over all sources, point emissions included.
  double mass(double a, double b) const;
  double total(double horizon) const { return mass(0.0, horizon); }
  bool empty() const;
  /// Copy without point emissions.
  BoundaryMeasure continuous_part() const;
  /// All distinct point-emission times, sorted.
  std::vector<double> atom_times() const;
  BoundaryMeasure scaled(double factor) const;
};

ValidationReport validate(const MetricGraph& g, const BoundaryMeasure& sigma, double horizon);

double total_mass(const AtomicMeasure& mu);

/// Sum of mass * d(x, center)^p.
double p_moment(const MetricGraph& g, const AtomicMeasure& mu, const GraphPoint& center, int p);

/// Atoms lying on `arc` (vertex aliases are not moved across arcs).
AtomicMeasure restrict(const MetricGraph& g, const AtomicMeasure& mu, ArcId arc);

struct PruneResult {
  AtomicMeasure measure;
  double lost = 0.0;
};

/// Drops atoms lighter than `threshold` and reports the removed mass.
PruneResult prune(const AtomicMeasure& mu, double threshold);

/// Removes zero-mass atoms.
AtomicMeasure normalize(const AtomicMeasure& mu);

/// Merges atoms of the same lineage lying on the same arc within `tolerance`
/// of each other. Atoms of different lineages are never merged.
AtomicMeasure merge_close(const AtomicMeasure& mu, double tolerance);

AtomicMeasure scaled(const AtomicMeasure& mu, double factor);

/// Midpoint quadrature of a per-arc density on [from, to] into `cells` atoms.
std::vector<Atom> quadrature_atoms(ArcId arc, const PiecewiseLinear& density, double from,
                                   double to, int cells);

}  // namespace netmeasure
