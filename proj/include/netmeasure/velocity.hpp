// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "netmeasure/graph.hpp"
#include "netmeasure/kernels.hpp"
#include "netmeasure/measure.hpp"
#include "netmeasure/piecewise.hpp"
#include "netmeasure/speed_profile.hpp"

namespace netmeasure {

using kernels::KernelShape;

/// Nonincreasing interaction kernel supported on [0, radius].
struct Kernel {
  KernelShape shape = KernelShape::kConstant;
  double k0 = 0.0;
  double radius = 0.0;

  double operator()(double d) const;
};

/// Measure-independent speeds, one profile per arc.
struct TabulatedField {
  std::vector<PiecewiseLinear> profiles;
};

/// v[m](x) = max(v_f(x) - sum_j alpha_kj int_{D(x)} K dm, 0).
struct NonlocalTrafficField {
  std::vector<PiecewiseLinear> free_flow;
  Kernel kernel;
  std::map<std::pair<ArcId, ArcId>, double> alpha;
  /// When false, an atom ignores the frozen mass of its own lineage.
  bool self_interaction = false;
};

struct VelocityField {
  double v_max = 1.0;
  std::variant<TabulatedField, NonlocalTrafficField> model;

  bool measure_independent() const;
};

/// Uniform alpha rows for bounded arcs that have none.
VelocityField with_default_alpha(const MetricGraph& g, VelocityField field);

ValidationReport validate_field(const MetricGraph& g, const VelocityField& field);

/// Downstream atoms that can influence speeds on one arc. Positions are
/// measured from the arc's tail: atoms on an outgoing arc j sit at L + s with
/// weight alpha_kj * mass, atoms on the arc itself at s with weight mass.
struct InteractionSet {
  std::vector<double> y;
  std::vector<double> w;
  std::vector<Origin> origin;
};

InteractionSet gather_interactions(const MetricGraph& g, const NonlocalTrafficField& field,
                                   const AtomicMeasure& mu, ArcId arc);

/// Frozen speed profile v[m] on `arc`, clamped at zero. Atoms of lineage
/// `exclude` are left out of the interaction; kNoOrigin keeps all of them.
SpeedProfile nonlocal_profile(const MetricGraph& g, const NonlocalTrafficField& field,
                              const InteractionSet& set, ArcId arc, Origin exclude = kNoOrigin);

double interaction_speed(const MetricGraph& g, const NonlocalTrafficField& field,
                         const AtomicMeasure& mu, const GraphPoint& x);

double eval(const MetricGraph& g, const VelocityField& field, const AtomicMeasure& mu,
            const GraphPoint& x);

struct HypothesisSample {
  int points_per_arc = 64;
  /// Sampled extent of unbounded arcs.
  double unbounded_extent = 2.0;
  int measure_pairs = 100;
  int atoms_per_measure = 5;
  double max_atom_mass = 1.0;
  std::uint64_t seed = 1;
};

struct HypothesisReport {
  double max_speed = 0.0;
  double v_max = 0.0;
  /// Largest |v(x) - v(y)| / |x - y| over neighbouring grid points.
  double h2_quotient = 0.0;
  /// Largest slope magnitude inside the linear pieces of v[m], ignoring
  /// jumps. Diagnostic only.
  double h2_piecewise = 0.0;
  /// Largest sup_x |v[m1](x) - v[m2](x)| / ||m1 - m2||_BL.
  double h3_constant = 0.0;

  bool h1() const { return max_speed <= v_max; }
};

/// Throws Error when the sample has fewer than two points per arc.
HypothesisReport check_hypotheses(const MetricGraph& g, const VelocityField& field,
                                  const HypothesisSample& sample);

}  // namespace netmeasure
