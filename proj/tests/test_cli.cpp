// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("netmeasure-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(NETMEASURE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("simulate keeps the mass ledger and writes tables") {
  const auto out = scratch("simulate");
  CHECK(run("simulate " + fixtures::path("y_junction") + " -o " + out.string()) == 0);
  for (const char* f : {"snapshots.csv", "traces.csv", "ledger.csv", "mass.csv"}) CHECK(fs::exists(out / f));

  // Total mass per snapshot time, from the raw snapshot table.
  std::ifstream in(out / "snapshots.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,arc,s,mass");
  std::map<double, double> totals;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string t, arc, s, mass;
    std::getline(row, t, ',');
    std::getline(row, arc, ',');
    std::getline(row, s, ',');
    std::getline(row, mass, ',');
    totals[std::stod(t)] += std::stod(mass);
  }
  REQUIRE_FALSE(totals.empty());
  // Initial mass 1.5, point emissions of 0.2 at t = 0.3 and 0.25 at t = 1.1.
  for (const auto& [t, m] : totals) {
    const double expected = 1.5 + (t > 0.3 ? 0.2 : 0.0) + (t > 1.1 ? 0.25 : 0.0);
    CHECK(m == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("converge on a linear fixture passes its gate") {
  const auto out = scratch("converge");
  CHECK(run("converge " + fixtures::path("y_junction") + " --levels 4,5,6,7,8 -o " + out.string()) == 0);
  CHECK(fs::exists(out / "convergence.csv"));
}

TEST_CASE("depend with a zero perturbation reports zero") {
  const auto out = scratch("depend");
  auto doc = nlohmann::json::parse(slurp(fixtures::path("y_junction")));
  doc["studies"]["depend"]["deltas"] = {0.0};
  const fs::path scenario = out / "zero.json";
  std::ofstream(scenario) << doc.dump();
  CHECK(run("depend " + scenario.string() + " -o " + out.string()) == 0);
  const auto table = slurp(out / "depend.csv");
  CHECK(table.find("\n0,0,0,0\n") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
  const auto out = scratch("errors");
  CHECK(run("simulate /nonexistent.json") == 2);
  CHECK(run("no-such-command " + fixtures::path("single_arc")) == 2);
  const fs::path bad = out / "bad.json";
  std::ofstream(bad) << R"({"graph": {"vertices": []}})";
  CHECK(run("simulate " + bad.string() + " -o " + out.string()) == 2);
}

TEST_CASE("reruns produce byte-identical tables") {
  const auto a = scratch("rerun-a"), b = scratch("rerun-b");
  for (const auto& dir : {a, b}) {
    REQUIRE(run("simulate " + fixtures::path("mixed6") + " -N 5 -o " + dir.string()) == 0);
    REQUIRE(run("depend " + fixtures::path("y_nonlocal") + " -N 4 -o " + dir.string()) == 0);
  }
  for (const char* f : {"snapshots.csv", "traces.csv", "ledger.csv", "mass.csv", "depend.csv"})
    CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("normalize writes a loadable dump") {
  const auto out = scratch("normalize");
  CHECK(run("normalize " + fixtures::path("gluing") + " -o " + out.string()) == 0);
  const fs::path dump = out / "scenario.normalized.json";
  REQUIRE(fs::exists(dump));
  CHECK(run("normalize " + dump.string() + " -o " + (out / "again").string()) == 0);
}
