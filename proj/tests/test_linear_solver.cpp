// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "netmeasure/flat_metric.hpp"
#include "netmeasure/linear_solver.hpp"
#include "oracles.hpp"

using namespace netmeasure;

namespace {

VelocityField unit_speed(const MetricGraph& g) {
  return VelocityField{1.0, TabulatedField{std::vector<PiecewiseLinear>(g.num_arcs(), PiecewiseLinear(1.0))}};
}

struct Y {
  MetricGraph g{fixtures::y_spec(1.0)};
  ArcId in = *g.find_arc("in");
  ArcId left = *g.find_arc("left");
  ArcId right = *g.find_arc("right");
  RoutingMatrix p;
  Y() {
    p.set(in, left, PiecewiseConstant(0.3));
    p.set(in, right, PiecewiseConstant(0.7));
  }
};

double mass_on(const AtomicMeasure& m, ArcId a) {
  double sum = 0.0;
  for (const auto& atom : m.atoms())
    if (atom.point.arc == a) sum += atom.mass;
  return sum;
}

}  // namespace

TEST_CASE("arc_flow examples") {
  const MetricGraph g(fixtures::y_spec(2.0));
  const ArcId in = *g.find_arc("in");
  const auto field = FrozenField::freeze(g, unit_speed(g), AtomicMeasure(g));
  const auto inside = arc_flow(field, in, 0.5, 0.3, 1.3);
  CHECK_FALSE(inside.exited);
  CHECK(inside.time == 1.3);
  CHECK(inside.s == doctest::Approx(1.5).epsilon(1e-15));
  const auto exit = arc_flow(field, in, 1.5, 0.3, 1.3);
  CHECK(exit.exited);
  CHECK(exit.time == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(exit.s == 2.0);
}

TEST_CASE("advance translates along a single unbounded arc") {
  GraphSpec spec{{"S"}, {{"road", "S", std::nullopt, kInf}}, {"S"}};
  const MetricGraph g(spec);
  const auto field = FrozenField::freeze(g, unit_speed(g), AtomicMeasure(g));
  AtomicMeasure mu(g, {{{arc_id(0), 0.0}, 1.0, 0}});
  const auto r = advance(g, field, RoutingMatrix(), mu, BoundaryMeasure(), 0.0, 2.0);
  REQUIRE(r.measure.size() == 1);
  CHECK(r.measure.atoms()[0].point.s == 2.0);
  CHECK(r.measure.atoms()[0].mass == 1.0);
  CHECK(r.traces.empty());
}

TEST_CASE("advance splits at a Y-junction and records traces") {
  Y y;
  const auto field = FrozenField::freeze(y.g, unit_speed(y.g), AtomicMeasure(y.g));
  AtomicMeasure mu(y.g, {{{y.in, 0.0}, 1.0, 0}});
  const auto r = advance(y.g, field, y.p, mu, BoundaryMeasure(), 0.0, 2.0);
  REQUIRE(r.measure.size() == 2);
  for (const auto& a : r.measure.atoms()) CHECK(a.point.s == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mass_on(r.measure, y.left) == 0.3);
  CHECK(mass_on(r.measure, y.right) == 0.7);

  REQUIRE(r.traces.size() == 3);
  const auto& arrival = r.traces[0];
  CHECK(arrival.from == y.in);
  CHECK_FALSE(arrival.to.has_value());
  CHECK(arrival.time == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(arrival.mass == 1.0);
  CHECK(r.traces[1].to == y.left);
  CHECK(r.traces[1].mass == 0.3);
  CHECK(r.traces[2].to == y.right);
  CHECK(r.traces[2].mass == 0.7);
  for (int i = 1; i < 3; ++i) {
    CHECK(r.traces[i].parent == 0);
    CHECK(r.traces[i].time == arrival.time);
  }
  const auto tx = check_transmission(y.p, r.traces);
  CHECK(tx.arrivals == 1);
  CHECK(tx.child_error == 0.0);
  CHECK(tx.balance_error == 0.0);
}

TEST_CASE("advance follows a cycle through repeated crossings") {
  const MetricGraph g(fixtures::cycle_spec());
  const RoutingMatrix p = RoutingMatrix().with_defaults(g);
  const auto field = FrozenField::freeze(g, unit_speed(g), AtomicMeasure(g));
  AtomicMeasure mu(g, {{{*g.find_arc("ab"), 0.0}, 1.0, 0}});
  const auto r = advance(g, field, p, mu, BoundaryMeasure(), 0.0, 3.5);
  REQUIRE(r.measure.size() == 1);
  CHECK(r.measure.atoms()[0].point.arc == *g.find_arc("ba"));
  CHECK(r.measure.atoms()[0].point.s == doctest::Approx(0.5).epsilon(1e-14));
  std::vector<double> crossings;
  for (const auto& t : r.traces)
    if (!t.to) crossings.push_back(t.time);
  REQUIRE(crossings.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(crossings[i] == doctest::Approx(i + 1.0).epsilon(1e-14));

  AdvanceOptions tight;
  tight.max_events = 10;
  CHECK_THROWS_AS(advance(g, field, p, mu, BoundaryMeasure(), 0.0, 100.0, tight), Error);
}

TEST_CASE("routing breakpoints split windows with right-continuous coefficients") {
  Y y;
  RoutingMatrix p;
  p.set(y.in, y.left, PiecewiseConstant({1.0}, {0.3, 0.6}));
  p.set(y.in, y.right, PiecewiseConstant({1.0}, {0.7, 0.4}));
  CHECK(window_cuts(p, 0.0, 2.0) == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(window_cuts(p, 1.0, 2.0) == std::vector<double>{1.0, 2.0});
  const auto field = FrozenField::freeze(y.g, unit_speed(y.g), AtomicMeasure(y.g));
  // Exits at exactly t = 1 and t = 0.5.
  AtomicMeasure mu(y.g, {{{y.in, 0.0}, 1.0, 0}, {{y.in, 0.5}, 1.0, 1}});
  const auto r = advance(y.g, field, p, mu, BoundaryMeasure(), 0.0, 2.0);
  CHECK(mass_on(r.measure, y.left) == doctest::Approx(0.6 + 0.3).epsilon(1e-15));
  CHECK(check_transmission(p, r.traces).child_error == 0.0);
}

TEST_CASE("pruning removes light children and reports them") {
  Y y;
  const auto field = FrozenField::freeze(y.g, unit_speed(y.g), AtomicMeasure(y.g));
  AtomicMeasure mu(y.g, {{{y.in, 0.0}, 1.0, 0}});
  AdvanceOptions opt;
  opt.eps_mass = 0.35;
  const auto r = advance(y.g, field, y.p, mu, BoundaryMeasure(), 0.0, 2.0, opt);
  CHECK(r.pruned == 0.3);
  CHECK(total_mass(r.measure) == 0.7);
}

TEST_CASE("source emissions follow the window midpoints and point times") {
  Y y;
  BoundaryMeasure sigma;
  sigma.sources.push_back({*y.g.find_vertex("S"), PiecewiseConstant(0.5), {{0.25, 0.125}}});
  const auto e = source_emissions(y.g, sigma, {0.0, 1.0, 2.0});
  double mass = 0.0;
  for (const auto& em : e) {
    CHECK(em.arc == y.in);
    mass += em.mass;
  }
  CHECK(mass == doctest::Approx(1.125).epsilon(1e-15));
  bool midpoint = false, point = false;
  for (const auto& em : e) {
    midpoint = midpoint || (em.time == 0.5 && em.mass == 0.5);
    point = point || (em.time == 0.25 && em.mass == 0.125);
  }
  CHECK(midpoint);
  CHECK(point);
}

TEST_CASE("advance conserves mass and respects the speed bound") {
  const auto sc = fixtures::load("mixed6");
  const MetricGraph& g = sc.graph();
  const auto field = FrozenField::freeze(g, sc.problem.field, AtomicMeasure(g));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto mu = oracle::random_measure(g, rng, 10);
    const double t0 = 2.0 * unit(rng), t1 = t0 + unit(rng);
    const auto r = advance(g, field, sc.problem.routing, mu, sc.problem.sigma, t0, t1,
                           {0.0, 100000, static_cast<Origin>(mu.size())});
    const double expected = total_mass(mu) + sc.problem.sigma.mass(t0, t1);
    CHECK(total_mass(r.measure) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.pruned == 0.0);
    const auto tx = check_transmission(sc.problem.routing, r.traces);
    CHECK(tx.child_error <= 1e-12);
    CHECK(tx.balance_error <= 1e-12);

    // Every descendant lies forward of its initial atom, within V_max (t1 - t0).
    for (const auto& a : r.measure.atoms()) {
      if (a.origin >= mu.size()) continue;
      const auto& start = mu.atoms()[a.origin].point;
      const auto d = forward_distance(g, start, a.point);
      REQUIRE(d.has_value());
      CHECK(*d <= sc.problem.field.v_max * (t1 - t0) + 1e-12);
    }
  }
}

TEST_CASE("representation check examples") {
  GraphSpec spec{{"S"}, {{"road", "S", std::nullopt, kInf}}, {"S"}};
  const MetricGraph line(spec);
  const auto f1 = FrozenField::freeze(line, unit_speed(line), AtomicMeasure(line));
  AtomicMeasure one(line, {{{arc_id(0), 0.0}, 1.0, 0}});
  const auto r1 = representation_check(line, f1, RoutingMatrix(), one, BoundaryMeasure(), 0.0, 2.0, 2);
  CHECK(r1.discrepancy == 0.0);
  CHECK(r1.coefficient_defect == 0.0);

  Y y;
  const auto f2 = FrozenField::freeze(y.g, unit_speed(y.g), AtomicMeasure(y.g));
  AtomicMeasure mu(y.g, {{{y.in, 0.0}, 1.0, 0}});
  const auto r2 = representation_check(y.g, f2, y.p, mu, BoundaryMeasure(), 0.0, 2.0, 3);
  CHECK(r2.discrepancy <= 1e-9);
  CHECK(r2.coefficient_defect <= 1e-12);
  CHECK(r2.paths == 2);

  const MetricGraph cycle(fixtures::cycle_spec());
  const auto f3 = FrozenField::freeze(cycle, unit_speed(cycle), AtomicMeasure(cycle));
  AtomicMeasure c0(cycle, {{{arc_id(0), 0.0}, 1.0, 0}});
  const RoutingMatrix pc = RoutingMatrix().with_defaults(cycle);
  CHECK_THROWS_AS(representation_check(cycle, f3, pc, c0, BoundaryMeasure(), 0.0, 3.5, 2), Error);
  CHECK(representation_check(cycle, f3, pc, c0, BoundaryMeasure(), 0.0, 3.5, 5).discrepancy == 0.0);
}
