// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "netmeasure/graph.hpp"
#include "netmeasure/scenario.hpp"

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(NETMEASURE_FIXTURE_DIR) + "/" + name + ".json";
}

inline netmeasure::Scenario load(const std::string& name) { return netmeasure::load_scenario(path(name)); }

inline netmeasure::GraphSpec y_spec(double in_length = 2.0) {
  netmeasure::GraphSpec spec;
  spec.vertices = {"S", "V"};
  spec.arcs = {{"in", "S", "V", in_length}, {"left", "V", std::nullopt, netmeasure::kInf},
               {"right", "V", std::nullopt, netmeasure::kInf}};
  spec.sources = {"S"};
  return spec;
}

inline netmeasure::GraphSpec cycle_spec() {
  netmeasure::GraphSpec spec;
  spec.vertices = {"A", "B"};
  spec.arcs = {{"ab", "A", "B", 1.0}, {"ba", "B", "A", 1.0}};
  return spec;
}

}  // namespace fixtures
