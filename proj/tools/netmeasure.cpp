// SPDX-License-Identifier: Apache-2.0
// Command-line front end: netmeasure <command> <scenario.json> [-o dir] [overrides]
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netmeasure/cli.hpp"

namespace {

struct Overrides {
  std::string scenario;
  std::string out_dir = ".";
  std::optional<int> level;
  std::vector<int> levels;
  std::optional<double> eps_mass;
  std::optional<double> eps_event;
  std::optional<double> eps_merge;
  std::optional<int> max_events;
};

void apply(const Overrides& o, netmeasure::Scenario& sc) {
  if (!o.levels.empty()) sc.levels = o.levels;
  if (o.eps_mass) sc.problem.options.eps_mass = *o.eps_mass;
  if (o.eps_event) sc.eps_event = *o.eps_event;
  if (o.eps_merge) sc.problem.options.eps_merge = *o.eps_merge;
  if (o.max_events) sc.problem.options.max_events = static_cast<std::size_t>(*o.max_events);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure-valued transport on oriented metric networks"};
  app.require_subcommand(1);
  Overrides o;
  for (const auto& name : netmeasure::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("scenario", o.scenario, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", o.out_dir, "Output directory");
    sub->add_option("-N,--level", o.level, "Scheme level for single-level commands")->check(CLI::Range(0, 20));
    sub->add_option("--levels", o.levels, "Levels for multi-level commands")->delimiter(',');
    sub->add_option("--eps-mass", o.eps_mass, "Pruning threshold")->check(CLI::NonNegativeNumber);
    sub->add_option("--eps-event", o.eps_event, "Event tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--eps-merge", o.eps_merge, "Atom merge distance")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-events", o.max_events, "Crossings per lineage and window")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : netmeasure::kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    netmeasure::Scenario sc = netmeasure::load_scenario(o.scenario);
    apply(o, sc);
    netmeasure::RunOptions run;
    run.out_dir = o.out_dir;
    run.level = o.level;
    run.workers = netmeasure::worker_count();
    return netmeasure::run_command(command, sc, run, std::cout);
  } catch (const netmeasure::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return netmeasure::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << o.scenario << ": " << e.what() << "\n";
    return netmeasure::kExitInputError;
  }
}
