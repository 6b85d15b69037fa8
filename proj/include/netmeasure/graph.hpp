// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netmeasure/types.hpp"

namespace netmeasure {

/// Plain description of an oriented network, as read from a scenario file.
/// Unbounded arcs have infinite length and no head vertex.
struct GraphSpec {
  struct Arc {
    std::string id;
    std::string tail;
    std::optional<std::string> head;
    double length = 0.0;
  };
  std::vector<std::string> vertices;
  std::vector<Arc> arcs;
  std::vector<std::string> sources;
};

ValidationReport validate(const GraphSpec& spec);

/// A location on the network: arc plus local coordinate s in [0, L].
/// s = 0 is the tail vertex and s = L the head vertex.
struct GraphPoint {
  ArcId arc{};
  double s = 0.0;

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

struct ArcSegment {
  ArcId arc{};
  double lo = 0.0;
  double hi = 0.0;
};

struct Path {
  std::vector<ArcId> arcs;
  /// True when enumeration stopped at the crossing limit rather than at an
  /// unbounded terminal arc.
  bool truncated = false;
};

/// Validated, immutable metric graph. Vertex-to-vertex shortest paths
/// (undirected and orientation-respecting) are precomputed on construction.
class MetricGraph {
 public:
  struct Arc {
    std::string name;
    VertexId tail{};
    std::optional<VertexId> head;
    double length = 0.0;

    bool bounded() const { return head.has_value(); }
  };

  /// Throws Error carrying the validation summary when `spec` is invalid.
  explicit MetricGraph(const GraphSpec& spec);

  std::uint64_t id() const { return id_; }
  const GraphSpec& spec() const { return spec_; }

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }
  const Arc& arc(ArcId a) const { return arcs_.at(index(a)); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(index(v)); }
  std::optional<ArcId> find_arc(const std::string& name) const;
  std::optional<VertexId> find_vertex(const std::string& name) const;

  const std::vector<ArcId>& outgoing(VertexId v) const { return out_.at(index(v)); }
  const std::vector<ArcId>& incoming(VertexId v) const { return in_.at(index(v)); }
  bool is_source(VertexId v) const { return is_source_.at(index(v)); }
  const std::vector<VertexId>& sources() const { return sources_; }
  /// The unique outgoing arc of a source vertex.
  ArcId source_arc(VertexId source) const;

  /// Smallest length over all arcs (bounded arcs only; +inf when none).
  double min_arc_length() const { return min_length_; }

  double vertex_distance(VertexId a, VertexId b) const {
    return undirected_[index(a) * num_vertices() + index(b)];
  }
  double directed_vertex_distance(VertexId a, VertexId b) const {
    return directed_[index(a) * num_vertices() + index(b)];
  }

  bool contains(const GraphPoint& p) const;
  /// Vertex that `p` coincides with, if it sits at an arc endpoint.
  std::optional<VertexId> vertex_at(const GraphPoint& p) const;
  /// Alias-aware equality: two parametrizations of the same vertex compare
  /// equal.
  bool same_point(const GraphPoint& x, const GraphPoint& y) const;

 private:
  GraphSpec spec_;
  std::uint64_t id_ = 0;
  std::vector<std::string> vertex_names_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::vector<bool> is_source_;
  std::vector<VertexId> sources_;
  std::vector<double> undirected_;
  std::vector<double> directed_;
  double min_length_ = kInf;
};

/// Minimum path distance d_Γ, ignoring orientation.
double graph_distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y);

/// Length of the shortest orientation-respecting route from x to y.
std::optional<double> forward_distance(const MetricGraph& g, const GraphPoint& x,
                                       const GraphPoint& y);

/// Visual field {y >= x : d(x, y) <= R} as arc segments. Requires
/// R <= min arc length, so the field never reaches past the outgoing arcs of
/// the head of x's arc.
std::vector<ArcSegment> downstream_ball(const MetricGraph& g, const GraphPoint& x, double radius);

/// All oriented paths leaving x, cut after `max_crossings` junction
/// crossings. The first arc is x's own arc.
std::vector<Path> enumerate_paths(const MetricGraph& g, const GraphPoint& x, int max_crossings);

}  // namespace netmeasure
