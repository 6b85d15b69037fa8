// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "netmeasure/velocity.hpp"
#include "oracles.hpp"

using namespace netmeasure;

namespace {

VelocityField nonlocal(const MetricGraph& g, KernelShape shape, double k0, double radius) {
  NonlocalTrafficField nl;
  nl.free_flow.assign(g.num_arcs(), PiecewiseLinear(1.0));
  nl.kernel = {shape, k0, radius};
  return with_default_alpha(g, VelocityField{1.0, nl});
}

VelocityField tabulated(const MetricGraph& g, double v) {
  return VelocityField{1.0, TabulatedField{std::vector<PiecewiseLinear>(g.num_arcs(), PiecewiseLinear(v))}};
}

const NonlocalTrafficField& model(const VelocityField& f) { return std::get<NonlocalTrafficField>(f.model); }

MetricGraph chain() {
  GraphSpec spec{{"S", "V"}, {{"in", "S", "V", 2.0}, {"out", "V", std::nullopt, kInf}}, {"S"}};
  return MetricGraph(spec);
}

}  // namespace

TEST_CASE("kernel shapes") {
  const Kernel flat{KernelShape::kConstant, 0.5, 1.0};
  CHECK(flat(0.0) == 0.5);
  CHECK(flat(1.0) == 0.5);
  CHECK(flat(1.0 + 1e-12) == 0.0);
  CHECK(flat(-1e-12) == 0.0);
  const Kernel ramp{KernelShape::kLinear, 0.8, 2.0};
  CHECK(ramp(0.0) == 0.8);
  CHECK(ramp(1.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(ramp(2.0) == 0.0);
}

TEST_CASE("interaction_speed examples") {
  const MetricGraph g = chain();
  const ArcId in = *g.find_arc("in"), out = *g.find_arc("out");
  const auto field = nonlocal(g, KernelShape::kConstant, 0.6, 1.0);
  CHECK(interaction_speed(g, model(field), AtomicMeasure(g), {in, 1.5}) == 0.0);

  AtomicMeasure one(g, {{{out, 0.3}, 0.75}});
  CHECK(interaction_speed(g, model(field), one, {in, 1.5}) == doctest::Approx(0.6 * 0.75).epsilon(1e-15));
  // Behind x, or beyond the radius: no influence.
  CHECK(interaction_speed(g, model(field), one, {in, 1.0}) == 0.0);
  CHECK(interaction_speed(g, model(field), one, {out, 0.5}) == 0.0);
}

TEST_CASE("two outgoing arcs with equal weights") {
  const MetricGraph g(fixtures::y_spec(2.0));
  const ArcId in = *g.find_arc("in"), left = *g.find_arc("left"), right = *g.find_arc("right");
  const double k0 = 0.8, radius = 1.0, d = 0.7;
  const auto field = nonlocal(g, KernelShape::kLinear, k0, radius);
  const GraphPoint x{in, 1.5};
  AtomicMeasure atoms(g, {{{left, 0.2}, 1.0}, {{right, 0.2}, 1.0}});
  const double direct = interaction_speed(g, model(field), atoms, x);
  CHECK(direct == doctest::Approx(k0 * (1.0 - d / radius)).epsilon(1e-14));

  // Each atom replaced by a narrow uniform bump, integrated by the midpoint
  // rule against alpha * k(d(x, y)).
  const double h = 1e-3;
  const int cells = 2000;
  double quad = 0.0;
  for (const ArcId a : {left, right})
    for (int i = 0; i < cells; ++i) {
      const double y = 0.2 - h + (i + 0.5) * (2.0 * h / cells);
      const double dist = *oracle::refined_distance(g, x, {a, y}, true);
      quad += 0.5 * model(field).kernel(dist) * (1.0 / (2.0 * h)) * (2.0 * h / cells);
    }
  CHECK(direct == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("eval examples") {
  const MetricGraph g = chain();
  const ArcId in = *g.find_arc("in");
  CHECK(eval(g, tabulated(g, 1.0), AtomicMeasure(g), {in, 0.7}) == 1.0);
  const auto field = nonlocal(g, KernelShape::kConstant, 2.5, 1.0);
  CHECK(eval(g, field, AtomicMeasure(g), {in, 0.7}) == 1.0);
  AtomicMeasure jam(g, {{{in, 1.0}, 1.0}});
  CHECK(interaction_speed(g, model(field), jam, {in, 0.7}) == 2.5);
  CHECK(eval(g, field, jam, {in, 0.7}) == 0.0);
}

TEST_CASE("speeds stay in range, decrease with mass ahead and ignore mass outside the field") {
  const auto sc = fixtures::load("y_nonlocal");
  const MetricGraph& g = sc.graph();
  const auto& field = sc.problem.field;
  const double radius = model(field).kernel.radius;
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = oracle::random_measure(g, rng, 6);
    const GraphPoint x = oracle::random_point(g, rng);
    const double v = eval(g, field, mu, x);
    CHECK(v >= 0.0);
    CHECK(v <= field.v_max);

    const GraphPoint y = oracle::random_point(g, rng);
    AtomicMeasure more = mu;
    more.add(y, 0.5);
    const auto d = forward_distance(g, x, y);
    const double v_more = eval(g, field, more, x);
    if (d && *d <= radius)
      CHECK(v_more <= v);
    else
      CHECK(v_more == v);
  }
}

TEST_CASE("tabulated speeds do not depend on the measure") {
  const auto sc = fixtures::load("mixed6");
  const MetricGraph& g = sc.graph();
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const GraphPoint x = oracle::random_point(g, rng);
    const double empty = eval(g, sc.problem.field, AtomicMeasure(g), x);
    CHECK(eval(g, sc.problem.field, oracle::random_measure(g, rng, 8), x) == empty);
  }
}

TEST_CASE("frozen nonlocal profiles agree with pointwise evaluation") {
  const auto sc = fixtures::load("y_nonlocal");
  const MetricGraph& g = sc.graph();
  const auto& nl = model(sc.problem.field);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = oracle::random_measure(g, rng, 8);
    for (std::size_t k = 0; k < g.num_arcs(); ++k) {
      const ArcId a = arc_id(k);
      const auto profile = nonlocal_profile(g, nl, gather_interactions(g, nl, mu, a), a);
      const double top = std::isinf(g.arc(a).length) ? 3.0 : g.arc(a).length;
      for (int i = 0; i < 50; ++i) {
        const double s = top * unit(rng);
        CHECK(profile(s) == doctest::Approx(eval(g, sc.problem.field, mu, {a, s})).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("lineage exclusion removes an atom's own mass") {
  const MetricGraph g = chain();
  const ArcId out = *g.find_arc("out");
  const auto field = nonlocal(g, KernelShape::kConstant, 0.5, 1.0);
  AtomicMeasure mu(g);
  mu.add({out, 1.0}, 1.0, 7);
  const auto set = gather_interactions(g, model(field), mu, out);
  CHECK(nonlocal_profile(g, model(field), set, out)(0.5) == 0.5);
  CHECK(nonlocal_profile(g, model(field), set, out, 7)(0.5) == 1.0);
}

TEST_CASE("check_hypotheses examples") {
  const auto sc = fixtures::load("y_nonlocal");
  const MetricGraph& g = sc.graph();
  HypothesisSample sample;
  sample.measure_pairs = 10;

  const auto flat = check_hypotheses(g, tabulated(g, 0.75), sample);
  CHECK(flat.h1());
  CHECK(flat.h2_quotient == 0.0);
  CHECK(flat.h3_constant == 0.0);

  const auto free = check_hypotheses(g, nonlocal(g, KernelShape::kLinear, 0.0, 1.0), sample);
  CHECK(free.h3_constant == 0.0);

  const auto live = check_hypotheses(g, sc.problem.field, sample);
  CHECK(live.h1());
  CHECK(std::isfinite(live.h3_constant));
  CHECK(live.h3_constant > 0.0);

  sample.points_per_arc = 1;
  CHECK_THROWS_AS(check_hypotheses(g, sc.problem.field, sample), Error);
}

TEST_CASE("speed profiles clamp at zero and integrate in closed form") {
  const auto f = SpeedProfile::from_linear(PiecewiseLinear({{0.0, 1.0}, {2.0, -1.0}}), 2.0).clamped();
  CHECK(f(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f(1.5) == 0.0);
  // ds/dt = 1 - s from 0: s(t) = 1 - exp(-t), never reaching the stall point.
  const auto m = f.follow(0.0, 2.0);
  CHECK_FALSE(m.exited);
  CHECK(m.s == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK_FALSE(f.follow(0.0, kInf).exited);
  CHECK(f.follow(1.5, 3.0).s == 1.5);
}

TEST_CASE("linear-kernel H3 constant stays under the mass-weighted kernel bound") {
  const auto sc = fixtures::load("y_nonlocal");
  const auto& nl = model(sc.problem.field);
  HypothesisSample sample;  // 100 seeded pairs
  const auto report = check_hypotheses(sc.graph(), sc.problem.field, sample);
  const double mass_bound = sample.atoms_per_measure * sample.max_atom_mass;
  const double bound = nl.kernel.k0 * std::max(1.0, 1.0 / nl.kernel.radius) * (1.0 + mass_bound);
  CHECK(report.h3_constant <= bound);
}
