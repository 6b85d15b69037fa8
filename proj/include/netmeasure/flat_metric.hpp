// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "netmeasure/graph.hpp"
#include "netmeasure/measure.hpp"

namespace netmeasure {

/// Which Lipschitz constraints the dual LP carries.
enum class LipschitzConstraints {
  /// Consecutive points along every arc, with all graph vertices added as
  /// zero-weight nodes. Equivalent to the pairwise form because d_Γ is a
  /// path metric; far fewer rows.
  kArcChains,
  /// Every pair of support points, weighted by d_Γ.
  kAllPairs,
};

struct FlatMetricOptions {
  LipschitzConstraints constraints = LipschitzConstraints::kArcChains;
};

/// sup { <mu - nu, phi> : ||phi||_inf + Lip(phi) <= 1 }, solved exactly as a
/// linear program over the values of phi at the support points. Throws when
/// either measure is bound to a different graph.
double bl_dual_norm_diff(const MetricGraph& g, const AtomicMeasure& mu, const AtomicMeasure& nu,
                         const FlatMetricOptions& options = {});

/// Same quantity from the primal side: optimal partial transport between
/// atoms at cost (1 - theta) d_Γ per unit moved and theta per unit created or
/// destroyed, maximized over the budget split theta in [0, 1]. Each
/// evaluation is a min-cost flow on the complete graph of support points.
double flat_metric_oracle(const MetricGraph& g, const AtomicMeasure& mu, const AtomicMeasure& nu);

}  // namespace netmeasure
