// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "netmeasure/scenario.hpp"

using namespace netmeasure;

namespace {

const char* kMinimal = R"({
  "graph": {"vertices": ["S"], "arcs": [{"id": "road", "tail": "S", "length": "inf"}], "sources": ["S"]},
  "velocity": {"type": "tabulated", "v_max": 1.0, "profiles": {"road": 1.0}},
  "horizon": 1.0
})";

const char* kY = R"({
  "graph": {"vertices": ["S", "V"], "sources": ["S"],
            "arcs": [{"id": "in", "tail": "S", "head": "V", "length": 1.0},
                     {"id": "left", "tail": "V", "length": "inf"},
                     {"id": "right", "tail": "V", "length": "inf"}]},
  "routing": [ROUTING],
  "velocity": VELOCITY,
  "horizon": 2.0
})";

std::string y_scenario(const std::string& routing, const std::string& velocity) {
  std::string text = kY;
  text.replace(text.find("ROUTING"), 7, routing);
  text.replace(text.find("VELOCITY"), 8, velocity);
  return text;
}

const std::string kSplit =
    R"({"from": "in", "to": "left", "value": 0.3}, {"from": "in", "to": "right", "value": 0.7})";
const std::string kUnitSpeed = R"({"type": "tabulated", "v_max": 1.0, "profiles": {"default": 1.0}})";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "case");
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a minimal scenario loads with defaults") {
  const auto sc = parse_scenario(kMinimal, "minimal");
  CHECK(sc.graph().num_arcs() == 1);
  CHECK(sc.levels == std::vector<int>{4});
  CHECK(sc.eps_event == 1e-10);
  CHECK(sc.problem.options.eps_mass == 0.0);
  CHECK(sc.problem.options.eps_merge == 1e-12);
  CHECK(sc.problem.m0.empty());
  CHECK(sc.representation.time == 1.0);

  const std::string dump = normalized_dump(sc);
  for (const char* key : {"\"levels\"", "\"tolerances\"", "\"eps_event\"", "\"studies\"", "\"output\""})
    CHECK(dump.find(key) != std::string::npos);
}

TEST_CASE("normalizing is idempotent on every fixture") {
  for (const char* name : {"single_arc", "y_junction", "two_cycle", "mixed6", "y_nonlocal", "gluing"}) {
    const auto first = normalized_dump(fixtures::load(name));
    const auto second = normalized_dump(parse_scenario(first, name));
    CHECK(first == second);
  }
}

TEST_CASE("routing row sums are validated with the offending interval") {
  CHECK(error_of(y_scenario(kSplit, kUnitSpeed)).empty());
  const std::string bad =
      R"({"from": "in", "to": "left", "breakpoints": [0.5], "values": [0.3, 0.2]},
         {"from": "in", "to": "right", "value": 0.7})";
  const auto msg = error_of(y_scenario(bad, kUnitSpeed));
  CHECK(msg.find("invalid scenario") != std::string::npos);
  CHECK(msg.find("routing row 'in' sums to 0.9 on [0.5, inf)") != std::string::npos);
}

TEST_CASE("unknown kernel shapes list the supported ones") {
  const std::string velocity =
      R"({"type": "nonlocal", "v_max": 1.0, "free_flow": {"default": 1.0},
          "kernel": {"shape": "gaussian", "k0": 0.5, "radius": 0.5}})";
  const auto msg = error_of(y_scenario(kSplit, velocity));
  CHECK(msg.find("gaussian") != std::string::npos);
  CHECK(msg.find("supported: constant, linear") != std::string::npos);
}

TEST_CASE("malformed input is reported as a scenario error") {
  CHECK_FALSE(error_of("{ not json").empty());
  CHECK(error_of(y_scenario(R"({"from": "in", "to": "nowhere", "value": 1.0})", kUnitSpeed)).find("nowhere") !=
        std::string::npos);
  std::string no_horizon = kMinimal;
  no_horizon.replace(no_horizon.find("\"horizon\": 1.0"), 14, "\"horizon\": -1");
  CHECK_FALSE(error_of(no_horizon).empty());
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST_CASE("nonlocal scenarios get uniform alpha weights") {
  const std::string velocity =
      R"({"type": "nonlocal", "v_max": 1.0, "free_flow": {"default": 1.0},
          "kernel": {"shape": "linear", "k0": 0.5, "radius": 0.5}})";
  const auto sc = parse_scenario(y_scenario(kSplit, velocity), "alpha");
  const auto& nl = std::get<NonlocalTrafficField>(sc.problem.field.model);
  const ArcId in = *sc.graph().find_arc("in");
  CHECK(nl.alpha.at({in, *sc.graph().find_arc("left")}) == 0.5);
  CHECK(nl.alpha.at({in, *sc.graph().find_arc("right")}) == 0.5);
  CHECK_FALSE(nl.self_interaction);
}
