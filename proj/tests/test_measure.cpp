// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fixtures.hpp"
#include "netmeasure/measure.hpp"

using namespace netmeasure;

namespace {

struct YGraph {
  MetricGraph g{fixtures::y_spec(5.0)};
  ArcId in = *g.find_arc("in");
  ArcId left = *g.find_arc("left");
  ArcId right = *g.find_arc("right");
};

}  // namespace

TEST_CASE("total_mass") {
  YGraph y;
  CHECK(total_mass(AtomicMeasure(y.g)) == 0.0);
  AtomicMeasure m(y.g);
  m.add({y.in, 1.0}, 0.3);
  m.add({y.left, 2.0}, 0.7);
  CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("p_moment") {
  YGraph y;
  const GraphPoint center{y.in, 0.0};
  AtomicMeasure at_center(y.g, {{center, 1.0}});
  CHECK(p_moment(y.g, at_center, center, 1) == 0.0);

  AtomicMeasure far(y.g, {{{y.in, 3.0}, 1.0}});
  CHECK(p_moment(y.g, far, center, 1) == 3.0);
  CHECK(p_moment(y.g, far, center, 2) == 9.0);
  CHECK_THROWS_AS(p_moment(y.g, far, center, 3), Error);
}

TEST_CASE("restrict partitions a measure by arc") {
  YGraph y;
  AtomicMeasure only_in(y.g, {{{y.in, 1.0}, 1.0}});
  CHECK(restrict(y.g, only_in, y.left).empty());

  AtomicMeasure mixed(y.g, {{{y.in, 1.0}, 0.25}, {{y.left, 0.5}, 0.5}, {{y.right, 0.1}, 0.125}, {{y.in, 4.0}, 1.0}});
  double sum = 0.0;
  for (const ArcId a : {y.in, y.left, y.right}) {
    const auto part = restrict(y.g, mixed, a);
    for (const auto& atom : part.atoms()) CHECK(atom.point.arc == a);
    sum += total_mass(part);
  }
  CHECK(sum == total_mass(mixed));
  CHECK(restrict(y.g, mixed, y.in).size() == 2);
}

TEST_CASE("prune") {
  YGraph y;
  AtomicMeasure m(y.g, {{{y.in, 1.0}, 1e-12}, {{y.in, 2.0}, 0.5}});
  const auto same = prune(m, 0.0);
  CHECK(same.lost == 0.0);
  CHECK(same.measure.size() == 2);

  const auto cut = prune(m, 1e-9);
  CHECK(cut.measure.size() == 1);
  CHECK(cut.lost == 1e-12);
  CHECK(cut.measure.atoms()[0].mass == 0.5);
}

TEST_CASE("merge_close keeps lineages apart") {
  YGraph y;
  AtomicMeasure m(y.g);
  m.add({y.in, 1.0}, 0.25, 0);
  m.add({y.in, 1.0 + 1e-14}, 0.5, 0);
  m.add({y.in, 1.0}, 0.125, 1);
  m.add({y.left, 1.0}, 0.0625, 0);
  const auto merged = merge_close(m, 1e-12);
  CHECK(merged.size() == 3);
  CHECK(total_mass(merged) == total_mass(m));
  for (const auto& a : merged.atoms())
    if (a.origin == 0 && a.point.arc == y.in) CHECK(a.mass == 0.75);
}

TEST_CASE("boundary measure masses on half-open intervals") {
  YGraph y;
  BoundaryMeasure sigma;
  sigma.sources.push_back({*y.g.find_vertex("S"), PiecewiseConstant({0.5}, {0.8, 0.0}), {{1.0, 0.25}}});
  CHECK(sigma.mass(0.0, 1.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(sigma.mass(0.0, 1.5) == doctest::Approx(0.65).epsilon(1e-15));
  CHECK(sigma.mass(1.0, 1.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sigma.continuous_part().total(2.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(sigma.atom_times() == std::vector<double>{1.0});
  CHECK(validate(y.g, sigma, 2.0).ok());

  BoundaryMeasure bad = sigma;
  bad.sources[0].vertex = *y.g.find_vertex("V");
  CHECK_FALSE(validate(y.g, bad, 2.0).ok());
}

TEST_CASE("quadrature_atoms integrates linear densities exactly") {
  YGraph y;
  const auto flat = quadrature_atoms(y.in, PiecewiseLinear(2.0), 0.0, 1.0, 4);
  REQUIRE(flat.size() == 4);
  CHECK(flat[0].point.s == 0.125);
  CHECK(flat[0].mass == 0.5);

  const PiecewiseLinear ramp({{0.0, 0.0}, {2.0, 4.0}});
  const auto atoms = quadrature_atoms(y.in, ramp, 0.0, 2.0, 7);
  double mass = 0.0;
  for (const auto& a : atoms) mass += a.mass;
  CHECK(mass == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("measures reject atoms off the graph") {
  YGraph y;
  CHECK_THROWS_AS(AtomicMeasure(y.g, {{{y.in, 6.0}, 1.0}}), Error);
  CHECK_THROWS_AS(AtomicMeasure(y.g, {{{y.in, 1.0}, -1.0}}), Error);
  AtomicMeasure late(y.g);
  late.add({y.in, 5.5}, 1.0);
  CHECK_THROWS_AS(late.check_on(y.g), Error);
}
