// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "netmeasure/flat_metric.hpp"
#include "netmeasure/linear_solver.hpp"

namespace netmeasure {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Column-oriented CSV written to a temporary file and renamed into place.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error("table row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << '\n';
  }

  void write(const std::filesystem::path& path) const {
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw ScenarioError("cannot write '" + tmp + "'");
      out << body_.str();
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::size_t columns_;
  std::ostringstream body_;
};

std::string arc_name(const MetricGraph& g, const std::optional<ArcId>& a, const char* none) {
  return a ? g.arc(*a).name : none;
}

int level_of(const Scenario& sc, const RunOptions& opt) {
  return opt.level ? *opt.level : sc.levels.front();
}

int simulate(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  const MetricGraph& g = sc.graph();
  const int level = level_of(sc, opt);
  const Trajectory traj = solve(sc.problem, level);

  if (sc.output.snapshots) {
    Table snaps({"t", "arc", "s", "mass"});
    for (const auto& snap : traj.snapshots)
      for (const auto& a : snap.measure.atoms())
        snaps.row({fmt(snap.time), g.arc(a.point.arc).name, fmt(a.point.s), fmt(a.mass)});
    snaps.write(opt.out_dir / "snapshots.csv");
  }

  bool ok = true;
  double transmission = 0.0;
  if (sc.output.traces) {
    Table traces({"window", "vertex", "from", "to", "t", "mass"});
    for (std::size_t w = 0; w < traj.windows.size(); ++w) {
      for (const auto& e : traj.windows[w].traces)
        traces.row({std::to_string(w), g.vertex_name(e.vertex), arc_name(g, e.from, "-"),
                    arc_name(g, e.to, "in"), fmt(e.time), fmt(e.mass)});
    }
    traces.write(opt.out_dir / "traces.csv");
  }
  for (const auto& w : traj.windows) {
    const auto tr = check_transmission(sc.problem.routing, w.traces);
    transmission = std::max({transmission, tr.child_error, tr.balance_error});
  }
  ok = ok && transmission <= 1e-12;

  Table mass({"t", "total_mass", "cumulative_pruned", "expected", "relative_error"});
  double worst = 0.0;
  const double m0 = total_mass(sc.problem.m0);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const auto& snap = traj.snapshots[i];
    const double total = total_mass(snap.measure);
    const double pruned = traj.pruned_until(i);
    const double expected = m0 + sc.problem.sigma.mass(0.0, snap.time);
    const double rel = std::abs(total + pruned - expected) / std::max(expected, 1e-300);
    worst = std::max(worst, expected == 0.0 ? std::abs(total + pruned) : rel);
    mass.row({fmt(snap.time), fmt(total), fmt(pruned), fmt(expected), fmt(rel)});
  }
  if (sc.output.ledger) {
    Table ledger({"window", "t0", "t1", "pruned"});
    for (std::size_t w = 0; w < traj.windows.size(); ++w)
      ledger.row({std::to_string(w), fmt(traj.windows[w].t0), fmt(traj.windows[w].t1),
                  fmt(traj.windows[w].pruned)});
    ledger.write(opt.out_dir / "ledger.csv");
    mass.write(opt.out_dir / "mass.csv");
  }
  ok = ok && worst <= 1e-12;
  std::size_t atoms = traj.snapshots.back().measure.size();
  log << "simulate: level " << level << ", " << traj.windows.size() << " windows, " << atoms
      << " atoms at t = " << fmt(traj.horizon) << "\n"
      << "  mass ledger worst relative error " << fmt(worst) << (worst <= 1e-12 ? " ok" : " FAIL") << "\n"
      << "  transmission worst error " << fmt(transmission) << (transmission <= 1e-12 ? " ok" : " FAIL")
      << "\n";
  return ok ? kExitPass : kExitGateFailure;
}

int converge(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  const auto report = convergence_study(sc.problem, sc.levels, opt.workers);
  Table t({"N", "e_N", "ratio"});
  for (const auto& r : report.rows) t.row({std::to_string(r.level), fmt(r.error), fmt(r.ratio)});
  t.write(opt.out_dir / "convergence.csv");

  log << "converge:\n";
  for (const auto& r : report.rows) log << "  N = " << r.level << "  e_N = " << fmt(r.error) << "\n";
  bool ok = report.nonincreasing();
  log << "  e_N nonincreasing " << (ok ? "ok" : "FAIL") << "\n";
  if (sc.problem.field.measure_independent()) {
    const bool collapsed = std::all_of(report.rows.begin(), report.rows.end(),
                                       [&](const ConvergenceRow& r) { return r.error <= 10.0 * sc.eps_event; });
    // A rate source is emitted once per window, which keeps e_N = O(dt)
    // even for a measure-independent field.
    log << "  measure-independent field: e_N <= 10 eps_event " << (collapsed ? "ok" : "FAIL") << "\n";
    ok = ok && collapsed;
  }
  return ok ? kExitPass : kExitGateFailure;
}

int depend(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  const int level = opt.level ? *opt.level : sc.depend.level;
  const auto rows = dependence_study(sc.problem, sc.depend.kind, sc.depend.deltas, level, opt.workers);
  Table t({"delta", "input_distance", "sup_distance", "K"});
  for (const auto& r : rows) t.row({fmt(r.delta), fmt(r.input_distance), fmt(r.sup_distance), fmt(r.constant)});
  t.write(opt.out_dir / "depend.csv");

  bool ok = true;
  double lo = kInf, hi = 0.0;
  for (const auto& r : rows) {
    if (r.delta == 0.0) {
      ok = ok && r.sup_distance == 0.0;
      continue;
    }
    lo = std::min(lo, r.constant);
    hi = std::max(hi, r.constant);
  }
  const bool stable = hi == 0.0 || (std::isfinite(hi) && hi <= 3.0 * lo);
  ok = ok && stable;
  log << "depend: level " << level << "\n";
  for (const auto& r : rows)
    log << "  delta = " << fmt(r.delta) << "  sup = " << fmt(r.sup_distance) << "  K = " << fmt(r.constant) << "\n";
  log << "  K stable within a factor 3 " << (stable ? "ok" : "FAIL") << "\n";
  return ok ? kExitPass : kExitGateFailure;
}

int regularity(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  std::vector<int> levels = opt.level ? std::vector<int>{*opt.level} : sc.levels;
  Table t({"N", "s", "t", "lhs", "rhs", "pass"});
  bool ok = true;
  for (const int n : levels) {
    const auto report = time_regularity_check(sc.problem, solve(sc.problem, n), opt.workers);
    for (const auto& r : report.rows)
      t.row({std::to_string(n), fmt(r.s), fmt(r.t), fmt(r.lhs), fmt(r.rhs), r.pass ? "1" : "0"});
    log << "regularity: N = " << n << ", C = " << fmt(report.constant) << ", " << report.rows.size()
        << " pairs " << (report.pass() ? "ok" : "FAIL") << "\n";
    ok = ok && report.pass();
  }
  t.write(opt.out_dir / "regularity.csv");
  return ok ? kExitPass : kExitGateFailure;
}

int moments(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  std::vector<int> levels = opt.level ? std::vector<int>{*opt.level} : sc.levels;
  Table t({"N", "p", "t", "moment", "bound"});
  bool ok = true;
  for (const int n : levels) {
    const Trajectory traj = solve(sc.problem, n);
    for (const int p : sc.moments.orders) {
      double worst = 0.0;
      for (const auto& r : moment_rows(sc.problem, traj, sc.moments.center, p)) {
        t.row({std::to_string(n), std::to_string(p), fmt(r.t), fmt(r.moment), fmt(r.bound)});
        ok = ok && r.moment <= r.bound * (1.0 + 1e-12);
        worst = std::max(worst, r.moment);
      }
      log << "moments: N = " << n << ", p = " << p << ", max moment " << fmt(worst) << "\n";
    }
  }
  t.write(opt.out_dir / "moments.csv");
  log << "  bounded by the growth estimate " << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kExitPass : kExitGateFailure;
}

bool within_ten_percent(double a, double b) {
  if (a == b) return true;
  return std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= 0.1 * std::max(std::abs(a), std::abs(b));
}

int check_velocity(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  HypothesisSample refined = sc.hypotheses;
  refined.points_per_arc = 2 * sc.hypotheses.points_per_arc - 1;
  const auto base = check_hypotheses(sc.graph(), sc.problem.field, sc.hypotheses);
  const auto fine = check_hypotheses(sc.graph(), sc.problem.field, refined);
  Table t({"points_per_arc", "max_speed", "v_max", "h2_quotient", "h2_piecewise", "h3_constant"});
  for (const auto* r : {&base, &fine}) {
    const int pts = r == &base ? sc.hypotheses.points_per_arc : refined.points_per_arc;
    t.row({std::to_string(pts), fmt(r->max_speed), fmt(r->v_max), fmt(r->h2_quotient),
           fmt(r->h2_piecewise), fmt(r->h3_constant)});
  }
  t.write(opt.out_dir / "hypotheses.csv");
  const bool h1 = base.h1() && fine.h1();
  const bool h2 = within_ten_percent(base.h2_quotient, fine.h2_quotient);
  const bool h3 = within_ten_percent(base.h3_constant, fine.h3_constant);
  log << "check-velocity:\n"
      << "  H1 max speed " << fmt(std::max(base.max_speed, fine.max_speed)) << " <= " << fmt(base.v_max)
      << (h1 ? " ok" : " FAIL") << "\n"
      << "  H2 quotient " << fmt(base.h2_quotient) << " -> " << fmt(fine.h2_quotient)
      << (h2 ? " ok" : " FAIL") << " (piecewise slope " << fmt(fine.h2_piecewise) << ")\n"
      << "  H3 constant " << fmt(base.h3_constant) << " -> " << fmt(fine.h3_constant)
      << (h3 ? " ok" : " FAIL") << "\n";
  return h1 && h2 && h3 ? kExitPass : kExitGateFailure;
}

int check_representation(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  const MetricGraph& g = sc.graph();
  const Problem& pr = sc.problem;
  const FrozenField field = FrozenField::freeze(g, pr.field, pr.m0);
  const double t = sc.representation.time;
  const auto rep = representation_check(g, field, pr.routing, pr.m0, pr.sigma, 0.0, t,
                                        sc.representation.max_crossings);
  AdvanceOptions adv;
  for (const auto& a : pr.m0.atoms())
    if (a.origin != kNoOrigin) adv.next_origin = std::max<Origin>(adv.next_origin, a.origin + 1);
  const auto advanced = advance(g, field, pr.routing, pr.m0, pr.sigma, 0.0, t, adv);
  const auto tr = check_transmission(pr.routing, advanced.traces);

  Table table({"t", "paths", "discrepancy", "coefficient_defect", "transmission_error", "balance_error"});
  table.row({fmt(t), std::to_string(rep.paths), fmt(rep.discrepancy), fmt(rep.coefficient_defect),
             fmt(tr.child_error), fmt(tr.balance_error)});
  table.write(opt.out_dir / "representation.csv");
  const bool ok = rep.discrepancy <= 1e-7 && rep.coefficient_defect <= 1e-12 && tr.child_error <= 1e-12 &&
                  tr.balance_error <= 1e-12;
  log << "check-representation: t = " << fmt(t) << ", " << rep.paths << " paths\n"
      << "  flat distance to event-driven result " << fmt(rep.discrepancy) << "\n"
      << "  path coefficient defect " << fmt(rep.coefficient_defect) << "\n"
      << "  transmission error " << fmt(std::max(tr.child_error, tr.balance_error)) << "\n"
      << "  " << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kExitPass : kExitGateFailure;
}

int normalize(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
  const auto path = opt.out_dir / "scenario.normalized.json";
  std::filesystem::create_directories(opt.out_dir);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ScenarioError("cannot write '" + tmp + "'");
    out << normalized_dump(sc);
  }
  std::filesystem::rename(tmp, path);
  log << "normalize: wrote " << path.string() << "\n";
  return kExitPass;
}

using Command = int (*)(const Scenario&, const RunOptions&, std::ostream&);

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"simulate", simulate},
      {"converge", converge},
      {"depend", depend},
      {"regularity", regularity},
      {"moments", moments},
      {"check-velocity", check_velocity},
      {"check-representation", check_representation},
      {"normalize", normalize},
  };
  return table;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : commands()) out.push_back(name);
  return out;
}

int run_command(const std::string& command, const Scenario& scenario, const RunOptions& options,
                std::ostream& log) {
  const auto it = commands().find(command);
  if (it == commands().end()) throw ScenarioError("unknown command '" + command + "'");
  return it->second(scenario, options, log);
}

}  // namespace netmeasure
