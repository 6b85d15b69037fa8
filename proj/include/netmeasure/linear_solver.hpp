// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "netmeasure/graph.hpp"
#include "netmeasure/measure.hpp"
#include "netmeasure/routing.hpp"
#include "netmeasure/speed_profile.hpp"
#include "netmeasure/velocity.hpp"

namespace netmeasure {

/// Per-arc speeds with the measure argument of a velocity field fixed.
/// Lineage-specific profiles (self-interaction excluded) are built on first
/// use and cached; lookups are thread-safe.
class FrozenField {
 public:
  /// Explicit profiles, one per arc.
  FrozenField(const MetricGraph& g, std::vector<SpeedProfile> profiles, double v_max);

  static FrozenField freeze(const MetricGraph& g, const VelocityField& field,
                            const AtomicMeasure& frozen);

  const SpeedProfile& profile(ArcId arc, Origin origin = kNoOrigin) const;
  double v_max() const { return v_max_; }
  const MetricGraph& graph() const { return *g_; }

 private:
  struct Lineages {
    NonlocalTrafficField field;
    std::vector<InteractionSet> sets;
    std::mutex lock;
    std::map<std::pair<std::size_t, Origin>, SpeedProfile> cache;
  };

  FrozenField(const MetricGraph& g, double v_max) : g_(&g), v_max_(v_max) {}

  const MetricGraph* g_;
  double v_max_;
  std::vector<SpeedProfile> base_;
  std::unique_ptr<Lineages> lineages_;
};

struct ArcFlow {
  bool exited = false;
  /// Exit time when exited, t1 otherwise.
  double time = 0.0;
  /// Position at t1, or L at exit.
  double s = 0.0;
};

/// Characteristic from (s0, t0) on one arc up to t1 (t1 may be +inf).
ArcFlow arc_flow(const FrozenField& field, ArcId arc, double s0, double t0, double t1,
                 Origin origin = kNoOrigin);

inline constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

/// One vertex crossing. An arrival record has `to` empty; each of its children
/// names the arc taken and points back through `parent`. Source emissions have
/// `from` empty.
struct TraceEvent {
  VertexId vertex{};
  std::optional<ArcId> from;
  std::optional<ArcId> to;
  double time = 0.0;
  double mass = 0.0;
  std::size_t parent = kNoParent;
};

struct Emission {
  VertexId vertex{};
  ArcId arc{};
  double time = 0.0;
  double mass = 0.0;
};

/// Mass emitted by sigma over consecutive windows cuts[i], cuts[i+1]. The
/// rate part gives one atom per window at its midpoint; point emissions keep
/// their times. Ordered by window, then source, then time.
std::vector<Emission> source_emissions(const MetricGraph& g, const BoundaryMeasure& sigma,
                                       const std::vector<double>& cuts);

/// Sub-window boundaries of [t0, t1]: the ends plus interior routing
/// breakpoints.
std::vector<double> window_cuts(const RoutingMatrix& p, double t0, double t1);

struct AdvanceOptions {
  double eps_mass = 0.0;
  /// Junction crossings allowed for one lineage within a window.
  std::size_t max_events = 100000;
  /// Origin tag for the first emitted source atom.
  Origin next_origin = 0;
};

struct AdvanceResult {
  AtomicMeasure measure;
  std::vector<TraceEvent> traces;
  double pruned = 0.0;
  Origin next_origin = 0;
};

/// Pushes mu0 forward over [t0, t1] under a frozen field, splitting mass at
/// junctions by p(theta) and emitting sigma restricted to [t0, t1).
AdvanceResult advance(const MetricGraph& g, const FrozenField& field, const RoutingMatrix& p,
                      const AtomicMeasure& mu0, const BoundaryMeasure& sigma, double t0, double t1,
                      const AdvanceOptions& options = {});

struct RepresentationReport {
  /// Flat distance between the path reconstruction and advance().
  double discrepancy = 0.0;
  /// Largest |sum over paths of p_gamma - 1| over starting atoms.
  double coefficient_defect = 0.0;
  std::size_t paths = 0;
};

/// Rebuilds m_t by following every path out of every initial and emitted atom
/// and weighting by its path coefficient, then compares with advance(). Throws
/// when a path cut at `max_crossings` is left before t.
RepresentationReport representation_check(const MetricGraph& g, const FrozenField& field,
                                          const RoutingMatrix& p, const AtomicMeasure& mu0,
                                          const BoundaryMeasure& sigma, double t0, double t,
                                          int max_crossings);

struct TransmissionReport {
  /// Largest |child mass - parent mass * p_kj(theta)|.
  double child_error = 0.0;
  /// Largest |sum of children - parent mass| relative to the parent mass.
  double balance_error = 0.0;
  std::size_t arrivals = 0;
};

TransmissionReport check_transmission(const RoutingMatrix& p, const std::vector<TraceEvent>& traces);

}  // namespace netmeasure
