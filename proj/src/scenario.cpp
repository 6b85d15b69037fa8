// SPDX-License-Identifier: Apache-2.0
#include "netmeasure/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace netmeasure {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ScenarioError("field '" + path + "': " + what);
}

const json* member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const json* j = member(obj, key);
  if (j == nullptr) bad(path + "." + key, "missing");
  return *j;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
}

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

double number(const json& j, const std::string& path, bool allow_inf = false) {
  if (j.is_number()) return j.get<double>();
  if (allow_inf && j.is_string() && (j == "inf" || j == "+inf")) return kInf;
  bad(path, allow_inf ? "expected a number or \"inf\"" : "expected a number");
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
  const json* j = member(obj, key);
  return j ? number(*j, path + "." + key) : fallback;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

int integer_or(const json& obj, const char* key, const std::string& path, int fallback) {
  const json* j = member(obj, key);
  return j ? integer(*j, path + "." + key) : fallback;
}

bool boolean_or(const json& obj, const char* key, const std::string& path, bool fallback) {
  const json* j = member(obj, key);
  if (j == nullptr) return fallback;
  if (!j->is_boolean()) bad(path + "." + key, "expected true or false");
  return j->get<bool>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  std::vector<double> out;
  const auto& arr = expect_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(number(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json length_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

// A speed or density profile: a constant or a list of [x, y] knots.
PiecewiseLinear profile(const json& j, const std::string& path) {
  if (j.is_number()) return PiecewiseLinear(j.get<double>());
  const auto& arr = expect_array(j, path);
  if (arr.empty()) bad(path, "needs at least one knot");
  std::vector<PiecewiseLinear::Knot> knots;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) bad(p, "expected a [x, y] pair");
    knots.push_back({number(arr[i][0], p + "[0]"), number(arr[i][1], p + "[1]")});
  }
  try {
    return PiecewiseLinear(std::move(knots));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

json profile_json(const PiecewiseLinear& f) {
  json out = json::array();
  for (const auto& k : f.knots()) out.push_back({k.x, k.y});
  return out;
}

PiecewiseConstant step(const json& j, const std::string& path) {
  if (j.is_number()) return PiecewiseConstant(j.get<double>());
  expect_object(j, path);
  const json* bps = member(j, "breakpoints");
  const json* vals = member(j, "values");
  if (vals == nullptr) {
    if (const json* v = member(j, "value")) return PiecewiseConstant(number(*v, path + ".value"));
    bad(path + ".values", "missing");
  }
  try {
    return PiecewiseConstant(bps ? numbers(*bps, path + ".breakpoints") : std::vector<double>{},
                             numbers(*vals, path + ".values"));
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

json step_json(const PiecewiseConstant& f) {
  return {{"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

class Loader {
 public:
  Scenario load(const json& doc, const std::string& name) {
    expect_object(doc, "$");
    Scenario sc;
    sc.name = name;
    graph_ = load_graph(require(doc, "graph", "$"));
    const MetricGraph& g = *graph_;
    sc.problem.graph = graph_;

    sc.problem.horizon = number(require(doc, "horizon", "$"), "$.horizon");
    if (!(sc.problem.horizon > 0.0) || !std::isfinite(sc.problem.horizon))
      issues_.fail("horizon must be positive and finite");
    if (const json* lv = member(doc, "levels")) {
      sc.levels.clear();
      const auto& arr = expect_array(*lv, "$.levels");
      for (std::size_t i = 0; i < arr.size(); ++i) sc.levels.push_back(integer(arr[i], "$.levels[" + std::to_string(i) + "]"));
      if (sc.levels.empty()) issues_.fail("levels must not be empty");
      for (int n : sc.levels)
        if (n < 0 || n > 20) issues_.fail("levels must lie in 0..20");
    }

    if (const json* tol = member(doc, "tolerances")) {
      expect_object(*tol, "$.tolerances");
      sc.problem.options.eps_mass = number_or(*tol, "eps_mass", "$.tolerances", 0.0);
      sc.eps_event = number_or(*tol, "eps_event", "$.tolerances", 1e-10);
      sc.problem.options.eps_merge = number_or(*tol, "eps_merge", "$.tolerances", 1e-12);
      const int max_events = integer_or(*tol, "max_events", "$.tolerances", 100000);
      if (max_events <= 0) issues_.fail("max_events must be positive");
      sc.problem.options.max_events = static_cast<std::size_t>(std::max(max_events, 1));
      if (!(sc.problem.options.eps_mass >= 0.0)) issues_.fail("eps_mass must be non-negative");
      if (!(sc.eps_event > 0.0)) issues_.fail("eps_event must be positive");
      if (!(sc.problem.options.eps_merge >= 0.0)) issues_.fail("eps_merge must be non-negative");
    }

    sc.problem.routing = load_routing(member(doc, "routing")).with_defaults(g);
    issues_.merge(validate_routing(g, sc.problem.routing, sc.problem.horizon));

    sc.problem.field = with_default_alpha(g, load_field(require(doc, "velocity", "$")));
    issues_.merge(validate_field(g, sc.problem.field));

    sc.problem.m0 = load_initial(member(doc, "initial"));
    sc.problem.sigma = load_boundary(member(doc, "boundary"));
    issues_.merge(validate(g, sc.problem.sigma, sc.problem.horizon));

    if (const json* out = member(doc, "output")) {
      expect_object(*out, "$.output");
      sc.output.snapshots = boolean_or(*out, "snapshots", "$.output", true);
      sc.output.traces = boolean_or(*out, "traces", "$.output", true);
      sc.output.ledger = boolean_or(*out, "ledger", "$.output", true);
    }
    load_studies(member(doc, "studies"), sc);

    if (!issues_.ok()) throw ScenarioError(name + ": invalid scenario: " + issues_.summary());
    return sc;
  }

 private:
  std::shared_ptr<MetricGraph> load_graph(const json& j) {
    expect_object(j, "$.graph");
    GraphSpec spec;
    const auto& verts = expect_array(require(j, "vertices", "$.graph"), "$.graph.vertices");
    for (std::size_t i = 0; i < verts.size(); ++i)
      spec.vertices.push_back(text(verts[i], "$.graph.vertices[" + std::to_string(i) + "]"));
    const auto& arcs = expect_array(require(j, "arcs", "$.graph"), "$.graph.arcs");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const std::string p = "$.graph.arcs[" + std::to_string(i) + "]";
      expect_object(arcs[i], p);
      GraphSpec::Arc a;
      a.id = text(require(arcs[i], "id", p), p + ".id");
      a.tail = text(require(arcs[i], "tail", p), p + ".tail");
      if (const json* h = member(arcs[i], "head")) a.head = text(*h, p + ".head");
      a.length = number(require(arcs[i], "length", p), p + ".length", true);
      spec.arcs.push_back(a);
    }
    if (const json* src = member(j, "sources")) {
      const auto& arr = expect_array(*src, "$.graph.sources");
      for (std::size_t i = 0; i < arr.size(); ++i)
        spec.sources.push_back(text(arr[i], "$.graph.sources[" + std::to_string(i) + "]"));
    }
    const auto report = validate(spec);
    if (!report.ok()) throw ScenarioError("invalid graph: " + report.summary());
    return std::make_shared<MetricGraph>(spec);
  }

  std::optional<ArcId> arc(const json& j, const std::string& path) {
    const std::string id = text(j, path);
    const auto a = graph_->find_arc(id);
    if (!a) issues_.fail("unknown arc '" + id + "' at " + path);
    return a;
  }

  RoutingMatrix load_routing(const json* j) {
    RoutingMatrix p;
    if (j == nullptr) return p;
    const auto& arr = expect_array(*j, "$.routing");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "$.routing[" + std::to_string(i) + "]";
      expect_object(arr[i], path);
      const auto from = arc(require(arr[i], "from", path), path + ".from");
      const auto to = arc(require(arr[i], "to", path), path + ".to");
      const PiecewiseConstant f = step(arr[i], path);
      if (from && to) p.set(*from, *to, f);
    }
    return p;
  }

  std::vector<PiecewiseLinear> per_arc_profiles(const json& j, const std::string& path) {
    expect_object(j, path);
    std::vector<std::optional<PiecewiseLinear>> found(graph_->num_arcs());
    std::optional<PiecewiseLinear> fallback;
    for (const auto& [key, value] : j.items()) {
      const std::string p = path + "." + key;
      if (key == "default") {
        fallback = profile(value, p);
        continue;
      }
      const auto a = graph_->find_arc(key);
      if (!a) {
        issues_.fail("unknown arc '" + key + "' at " + path);
        continue;
      }
      found[index(*a)] = profile(value, p);
    }
    std::vector<PiecewiseLinear> out;
    for (std::size_t k = 0; k < found.size(); ++k) {
      if (found[k]) {
        out.push_back(*found[k]);
      } else if (fallback) {
        out.push_back(*fallback);
      } else {
        issues_.fail("no profile for arc '" + graph_->arc(arc_id(k)).name + "' at " + path);
        out.emplace_back(0.0);
      }
    }
    return out;
  }

  VelocityField load_field(const json& j) {
    const std::string path = "$.velocity";
    expect_object(j, path);
    VelocityField field;
    field.v_max = number(require(j, "v_max", path), path + ".v_max");
    const std::string type = text(require(j, "type", path), path + ".type");
    if (type == "tabulated") {
      field.model = TabulatedField{per_arc_profiles(require(j, "profiles", path), path + ".profiles")};
      return field;
    }
    if (type != "nonlocal")
      bad(path + ".type", "unknown velocity type '" + type + "' (supported: tabulated, nonlocal)");
    NonlocalTrafficField nl;
    nl.free_flow = per_arc_profiles(require(j, "free_flow", path), path + ".free_flow");
    const json& kernel = require(j, "kernel", path);
    expect_object(kernel, path + ".kernel");
    const std::string shape = text(require(kernel, "shape", path + ".kernel"), path + ".kernel.shape");
    if (shape == "constant") {
      nl.kernel.shape = KernelShape::kConstant;
    } else if (shape == "linear") {
      nl.kernel.shape = KernelShape::kLinear;
    } else {
      bad(path + ".kernel.shape", "unknown kernel shape '" + shape + "' (supported: constant, linear)");
    }
    nl.kernel.k0 = number(require(kernel, "k0", path + ".kernel"), path + ".kernel.k0");
    nl.kernel.radius = number(require(kernel, "radius", path + ".kernel"), path + ".kernel.radius");
    if (const json* alpha = member(j, "alpha")) {
      const auto& arr = expect_array(*alpha, path + ".alpha");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + ".alpha[" + std::to_string(i) + "]";
        expect_object(arr[i], p);
        const auto from = arc(require(arr[i], "from", p), p + ".from");
        const auto to = arc(require(arr[i], "to", p), p + ".to");
        const double w = number(require(arr[i], "weight", p), p + ".weight");
        if (from && to) nl.alpha[{*from, *to}] = w;
      }
    }
    nl.self_interaction = boolean_or(j, "self_interaction", path, false);
    field.model = std::move(nl);
    return field;
  }

  AtomicMeasure load_initial(const json* j) {
    AtomicMeasure m(*graph_);
    if (j == nullptr) return m;
    const std::string path = "$.initial";
    expect_object(*j, path);
    Origin next = 0;
    auto place = [&](ArcId a, double s, double mass, const std::string& p) {
      if (!graph_->contains({a, s})) issues_.fail("atom at " + p + " lies outside its arc");
      if (!(mass >= 0.0) || !std::isfinite(mass)) issues_.fail("atom at " + p + " has an invalid mass");
      m.add({a, s}, mass, next++);
    };
    if (const json* atoms = member(*j, "atoms")) {
      const auto& arr = expect_array(*atoms, path + ".atoms");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + ".atoms[" + std::to_string(i) + "]";
        expect_object(arr[i], p);
        const auto a = arc(require(arr[i], "arc", p), p + ".arc");
        const double s = number(require(arr[i], "s", p), p + ".s");
        const double mass = number(require(arr[i], "mass", p), p + ".mass");
        if (a) place(*a, s, mass, p);
      }
    }
    if (const json* dens = member(*j, "densities")) {
      const auto& arr = expect_array(*dens, path + ".densities");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + ".densities[" + std::to_string(i) + "]";
        expect_object(arr[i], p);
        const auto a = arc(require(arr[i], "arc", p), p + ".arc");
        const double from = number(require(arr[i], "from", p), p + ".from");
        const double to = number(require(arr[i], "to", p), p + ".to");
        const PiecewiseLinear density = profile(require(arr[i], "density", p), p + ".density");
        const int cells = integer(require(arr[i], "cells", p), p + ".cells");
        if (!a) continue;
        try {
          for (const auto& atom : quadrature_atoms(*a, density, from, to, cells))
            place(atom.point.arc, atom.point.s, atom.mass, p);
        } catch (const Error& e) {
          issues_.fail(std::string(e.what()) + " at " + p);
        }
      }
    }
    return m;
  }

  BoundaryMeasure load_boundary(const json* j) {
    BoundaryMeasure sigma;
    if (j == nullptr) return sigma;
    const auto& arr = expect_array(*j, "$.boundary");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "$.boundary[" + std::to_string(i) + "]";
      expect_object(arr[i], p);
      const std::string vname = text(require(arr[i], "source", p), p + ".source");
      const auto v = graph_->find_vertex(vname);
      if (!v) {
        issues_.fail("unknown source vertex '" + vname + "' at " + p);
        continue;
      }
      SourceData src;
      src.vertex = *v;
      if (const json* rate = member(arr[i], "rate")) src.rate = step(*rate, p + ".rate");
      if (const json* atoms = member(arr[i], "atoms")) {
        const auto& list = expect_array(*atoms, p + ".atoms");
        for (std::size_t k = 0; k < list.size(); ++k) {
          const std::string q = p + ".atoms[" + std::to_string(k) + "]";
          expect_object(list[k], q);
          src.atoms.push_back({number(require(list[k], "time", q), q + ".time"),
                               number(require(list[k], "mass", q), q + ".mass")});
        }
      }
      sigma.sources.push_back(std::move(src));
    }
    return sigma;
  }

  void load_studies(const json* j, Scenario& sc) {
    const MetricGraph& g = *graph_;
    sc.moments.center = {g.sources().empty() ? arc_id(0) : g.source_arc(g.sources().front()), 0.0};
    sc.representation.time = sc.problem.horizon;
    sc.depend.level = sc.levels.empty() ? 4 : sc.levels.front();
    if (const auto* nl = std::get_if<NonlocalTrafficField>(&sc.problem.field.model))
      sc.hypotheses.unbounded_extent = 2.0 * nl->kernel.radius;
    if (j == nullptr) return;
    const std::string path = "$.studies";
    expect_object(*j, path);

    if (const json* d = member(*j, "depend")) {
      const std::string p = path + ".depend";
      expect_object(*d, p);
      if (const json* kind = member(*d, "perturbation")) {
        const std::string k = text(*kind, p + ".perturbation");
        if (k == "shift") {
          sc.depend.kind = Perturbation::kShift;
        } else if (k == "scale") {
          sc.depend.kind = Perturbation::kScale;
        } else {
          bad(p + ".perturbation", "unknown perturbation '" + k + "' (supported: shift, scale)");
        }
      }
      if (const json* deltas = member(*d, "deltas")) sc.depend.deltas = numbers(*deltas, p + ".deltas");
      sc.depend.level = integer_or(*d, "level", p, sc.depend.level);
      for (double delta : sc.depend.deltas)
        if (!(delta >= 0.0)) issues_.fail("perturbation sizes must be non-negative");
    }
    if (const json* m = member(*j, "moments")) {
      const std::string p = path + ".moments";
      expect_object(*m, p);
      if (const json* c = member(*m, "center")) {
        expect_object(*c, p + ".center");
        const auto a = arc(require(*c, "arc", p + ".center"), p + ".center.arc");
        const double s = number_or(*c, "s", p + ".center", 0.0);
        if (a) {
          sc.moments.center = {*a, s};
          if (!g.contains(sc.moments.center)) issues_.fail("moment center lies outside its arc");
        }
      }
      if (const json* orders = member(*m, "orders")) {
        sc.moments.orders.clear();
        const auto& arr = expect_array(*orders, p + ".orders");
        for (std::size_t i = 0; i < arr.size(); ++i) {
          const int order = integer(arr[i], p + ".orders[" + std::to_string(i) + "]");
          if (order != 1 && order != 2) issues_.fail("moment orders must be 1 or 2");
          sc.moments.orders.push_back(order);
        }
      }
    }
    if (const json* h = member(*j, "hypotheses")) {
      const std::string p = path + ".hypotheses";
      expect_object(*h, p);
      auto& hs = sc.hypotheses;
      hs.points_per_arc = integer_or(*h, "points_per_arc", p, hs.points_per_arc);
      hs.unbounded_extent = number_or(*h, "unbounded_extent", p, hs.unbounded_extent);
      hs.measure_pairs = integer_or(*h, "measure_pairs", p, hs.measure_pairs);
      hs.atoms_per_measure = integer_or(*h, "atoms_per_measure", p, hs.atoms_per_measure);
      hs.max_atom_mass = number_or(*h, "max_atom_mass", p, hs.max_atom_mass);
      if (const json* seed = member(*h, "seed")) {
        if (!seed->is_number_unsigned()) bad(p + ".seed", "expected a non-negative integer");
        hs.seed = seed->get<std::uint64_t>();
      }
      if (hs.points_per_arc < 2) issues_.fail("hypotheses.points_per_arc must be at least 2");
      if (hs.measure_pairs < 1) issues_.fail("hypotheses.measure_pairs must be positive");
      if (!(hs.unbounded_extent > 0.0)) issues_.fail("hypotheses.unbounded_extent must be positive");
    }
    if (const json* r = member(*j, "representation")) {
      const std::string p = path + ".representation";
      expect_object(*r, p);
      sc.representation.max_crossings = integer_or(*r, "max_crossings", p, sc.representation.max_crossings);
      sc.representation.time = number_or(*r, "time", p, sc.representation.time);
      if (sc.representation.max_crossings < 0) issues_.fail("max_crossings must be non-negative");
      if (!(sc.representation.time >= 0.0)) issues_.fail("representation time must be non-negative");
    }
  }

  std::shared_ptr<MetricGraph> graph_;
  ValidationReport issues_;
};

}  // namespace

Scenario parse_scenario(std::string_view text_in, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text_in.begin(), text_in.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(name + ": " + e.what());
  }
  try {
    return Loader().load(doc, name);
  } catch (const ScenarioError& e) {
    const std::string msg = e.what();
    if (msg.rfind(name + ":", 0) == 0) throw;
    throw ScenarioError(name + ": " + msg);
  } catch (const Error& e) {
    throw ScenarioError(name + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string normalized_dump(const Scenario& sc) {
  const MetricGraph& g = sc.graph();
  const Problem& pr = sc.problem;
  auto arc_name = [&](ArcId a) { return g.arc(a).name; };

  json graph;
  graph["vertices"] = g.spec().vertices;
  graph["sources"] = g.spec().sources;
  graph["arcs"] = json::array();
  for (const auto& a : g.spec().arcs) {
    json arc{{"id", a.id}, {"tail", a.tail}, {"length", length_json(a.length)}};
    if (a.head) arc["head"] = *a.head;
    graph["arcs"].push_back(arc);
  }

  json routing = json::array();
  for (const auto& [key, f] : pr.routing.entries()) {
    json e = step_json(f);
    e["from"] = arc_name(key.first);
    e["to"] = arc_name(key.second);
    routing.push_back(e);
  }

  auto profiles_json = [&](const std::vector<PiecewiseLinear>& profiles) {
    json out = json::object();
    for (std::size_t k = 0; k < profiles.size(); ++k) out[arc_name(arc_id(k))] = profile_json(profiles[k]);
    return out;
  };
  json velocity{{"v_max", pr.field.v_max}};
  if (const auto* tab = std::get_if<TabulatedField>(&pr.field.model)) {
    velocity["type"] = "tabulated";
    velocity["profiles"] = profiles_json(tab->profiles);
  } else {
    const auto& nl = std::get<NonlocalTrafficField>(pr.field.model);
    velocity["type"] = "nonlocal";
    velocity["free_flow"] = profiles_json(nl.free_flow);
    velocity["kernel"] = {{"shape", nl.kernel.shape == KernelShape::kLinear ? "linear" : "constant"},
                          {"k0", nl.kernel.k0},
                          {"radius", nl.kernel.radius}};
    velocity["alpha"] = json::array();
    for (const auto& [key, w] : nl.alpha)
      velocity["alpha"].push_back({{"from", arc_name(key.first)}, {"to", arc_name(key.second)}, {"weight", w}});
    velocity["self_interaction"] = nl.self_interaction;
  }

  json atoms = json::array();
  for (const auto& a : pr.m0.atoms())
    atoms.push_back({{"arc", arc_name(a.point.arc)}, {"s", a.point.s}, {"mass", a.mass}});

  json boundary = json::array();
  for (const auto& src : pr.sigma.sources) {
    json pts = json::array();
    for (const auto& e : src.atoms) pts.push_back({{"time", e.time}, {"mass", e.mass}});
    boundary.push_back({{"source", g.vertex_name(src.vertex)}, {"rate", step_json(src.rate)}, {"atoms", pts}});
  }

  json studies;
  studies["depend"] = {{"perturbation", sc.depend.kind == Perturbation::kShift ? "shift" : "scale"},
                       {"deltas", sc.depend.deltas},
                       {"level", sc.depend.level}};
  studies["moments"] = {{"center", {{"arc", arc_name(sc.moments.center.arc)}, {"s", sc.moments.center.s}}},
                        {"orders", sc.moments.orders}};
  const auto& hs = sc.hypotheses;
  studies["hypotheses"] = {{"points_per_arc", hs.points_per_arc},
                           {"unbounded_extent", hs.unbounded_extent},
                           {"measure_pairs", hs.measure_pairs},
                           {"atoms_per_measure", hs.atoms_per_measure},
                           {"max_atom_mass", hs.max_atom_mass},
                           {"seed", hs.seed}};
  studies["representation"] = {{"max_crossings", sc.representation.max_crossings},
                               {"time", sc.representation.time}};

  json doc{{"graph", graph},
           {"routing", routing},
           {"velocity", velocity},
           {"initial", {{"atoms", atoms}}},
           {"boundary", boundary},
           {"horizon", pr.horizon},
           {"levels", sc.levels},
           {"tolerances",
            {{"eps_mass", pr.options.eps_mass},
             {"eps_event", sc.eps_event},
             {"eps_merge", pr.options.eps_merge},
             {"max_events", pr.options.max_events}}},
           {"output",
            {{"snapshots", sc.output.snapshots}, {"traces", sc.output.traces}, {"ledger", sc.output.ledger}}},
           {"studies", studies}};
  return doc.dump(2) + "\n";
}

}  // namespace netmeasure
