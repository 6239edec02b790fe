#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/errors.hpp"

namespace qgraph {

using VertexId = int;
using EdgeId = int;

enum class VertexCondition { Standard, Dirichlet };

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  double length = 0.0;
};

/// One end of an edge as seen from a vertex.
struct Incidence {
  EdgeId edge = 0;
  bool at_source = false;  // true if the vertex is the edge's source (t = 0 end)
};

/// A location on the graph: arclength coordinate t in [0, length(edge)],
/// measured from the edge's source vertex.
struct GraphPoint {
  EdgeId edge = 0;
  double t = 0.0;
};

/// GraphPoint after canonicalization. t = 0 collapses to the source vertex and
/// t = length to the target vertex; vertex points are rewritten onto the
/// smallest incident edge id so the same vertex always compares equal.
struct CanonicalPoint {
  EdgeId edge = 0;
  double t = 0.0;
  std::optional<VertexId> vertex;
};

/// A finite compact metric graph: combinatorial graph with positive edge
/// lengths and a Standard or Dirichlet condition per vertex. Immutable after
/// construction; all operations on it are pure functions.
class MetricGraph {
 public:
  MetricGraph() = default;

  int vertex_count() const { return static_cast<int>(incidence_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }

  VertexCondition condition(VertexId v) const { return conditions_.at(static_cast<size_t>(v)); }
  bool has_dirichlet() const;

  const std::optional<std::string>& label(VertexId v) const { return labels_.at(static_cast<size_t>(v)); }
  std::optional<VertexId> vertex_by_label(const std::string& label) const;

  int degree(VertexId v) const { return static_cast<int>(incidences(v).size()); }
  const std::vector<Incidence>& incidences(VertexId v) const { return incidence_.at(static_cast<size_t>(v)); }

  double total_length() const;
  double shortest_edge() const;
  bool connected() const { return connected_; }

  bool valid_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }
  bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

  /// Vertex at the given end of an edge.
  VertexId endpoint(EdgeId e, bool at_source) const {
    return at_source ? edge(e).source : edge(e).target;
  }

 private:
  friend MetricGraph build_graph(int, const std::vector<Edge>&,
                                 const std::map<VertexId, VertexCondition>&,
                                 const std::map<VertexId, std::string>&);

  std::vector<Edge> edges_;
  std::vector<VertexCondition> conditions_;
  std::vector<std::optional<std::string>> labels_;
  std::vector<std::vector<Incidence>> incidence_;
  bool connected_ = false;
};

/// Validates and builds a metric graph. Every edge must have a strictly
/// positive, finite length and endpoints in [0, vertex_count). Vertices not in
/// `conditions` get the Standard condition.
MetricGraph build_graph(int vertex_count, const std::vector<Edge>& edges,
                        const std::map<VertexId, VertexCondition>& conditions = {},
                        const std::map<VertexId, std::string>& labels = {});

/// True iff the graph is connected and |E| = |V| - 1.
bool is_tree(const MetricGraph& g);

/// Vertices of degree one, sorted by id.
std::vector<VertexId> boundary_vertices(const MetricGraph& g);

/// One component produced by split_at_vertex, together with the id of the
/// fresh copy of the split vertex inside that component.
struct SplitPart {
  MetricGraph graph;
  VertexId attach = 0;
};

/// Disconnects a tree at vertex v into deg(v) components, each carrying a
/// fresh copy of v. Edge lengths and vertex conditions are preserved.
std::vector<SplitPart> split_at_vertex(const MetricGraph& g, VertexId v);

/// Glues the given graphs by identifying one attach vertex per part into a
/// single vertex. Inverse of split_at_vertex up to relabeling. The merged
/// vertex is Dirichlet if any attach vertex is Dirichlet.
MetricGraph glue_graphs(const std::vector<MetricGraph>& parts,
                        const std::vector<VertexId>& attach);

/// A GraphPoint sitting at vertex v (on its smallest incident edge id).
GraphPoint vertex_point(const MetricGraph& g, VertexId v);

/// Canonicalizes a point; throws ValidationError if the point is out of range.
CanonicalPoint canonical_point(const MetricGraph& g, const GraphPoint& p);

/// Shortest-path distances from vertex `source` to every vertex.
std::vector<double> vertex_distances(const MetricGraph& g, VertexId source);

/// Intrinsic path distance between two points of a connected graph.
double distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q);

struct Diameter {
  double length = 0.0;
  CanonicalPoint a;
  CanonicalPoint b;
};

/// Diameter of a tree with the realizing pair of points, via two-sweep
/// farthest-vertex search (exact on trees; both realizing points are
/// degree-one vertices). Throws UnsupportedError on non-tree input.
Diameter diameter(const MetricGraph& g);

/// Canonical iso-invariant encoding of a metric tree (lengths and vertex
/// conditions included, labels ignored). Two trees are related by a
/// degree-, length- and condition-preserving bijection iff their codes match.
std::string canonical_tree_code(const MetricGraph& g);

}  // namespace qgraph
