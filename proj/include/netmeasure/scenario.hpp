// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "netmeasure/scheme.hpp"
#include "netmeasure/studies.hpp"
#include "netmeasure/velocity.hpp"

namespace netmeasure {

/// Malformed or inconsistent scenario input.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct Scenario {
  std::string name;
  Problem problem;
  double eps_event = 1e-10;
  std::vector<int> levels{4};

  struct Output {
    bool snapshots = true;
    bool traces = true;
    bool ledger = true;
  } output;

  struct Depend {
    Perturbation kind = Perturbation::kScale;
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    int level = 4;
  } depend;

  struct Moments {
    GraphPoint center;
    std::vector<int> orders{1, 2};
  } moments;

  HypothesisSample hypotheses;

  struct Representation {
    int max_crossings = 8;
    /// Comparison time; defaults to the horizon.
    double time = 0.0;
  } representation;

  const MetricGraph& graph() const { return *problem.graph; }
};

/// Parses and validates a scenario document. All validation failures are
/// collected into one ScenarioError.
Scenario parse_scenario(std::string_view text, const std::string& name = "scenario");

Scenario load_scenario(const std::string& path);

/// The scenario with every default filled in, as JSON text. Loading the dump
/// gives back the same scenario.
std::string normalized_dump(const Scenario& scenario);

}  // namespace netmeasure
