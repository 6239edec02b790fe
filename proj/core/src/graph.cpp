#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <sstream>

namespace qgraph {

namespace {

std::string fmt_msg(const char* what, long long a, long long b = 0) {
  std::ostringstream os;
  os << what << " (" << a;
  if (b != 0) os << ", " << b;
  os << ")";
  return os.str();
}

}  // namespace

MetricGraph build_graph(int vertex_count, const std::vector<Edge>& edges,
                        const std::map<VertexId, VertexCondition>& conditions,
                        const std::map<VertexId, std::string>& labels) {
  if (vertex_count < 1) throw ValidationError("graph needs at least one vertex");

  MetricGraph g;
  g.edges_ = edges;
  g.conditions_.assign(static_cast<size_t>(vertex_count), VertexCondition::Standard);
  g.labels_.assign(static_cast<size_t>(vertex_count), std::nullopt);
  g.incidence_.assign(static_cast<size_t>(vertex_count), {});

  for (EdgeId e = 0; e < static_cast<int>(edges.size()); ++e) {
    const Edge& ed = edges[static_cast<size_t>(e)];
    if (ed.source < 0 || ed.source >= vertex_count || ed.target < 0 || ed.target >= vertex_count)
      throw ValidationError(fmt_msg("edge endpoint out of range", ed.source, ed.target));
    if (ed.source == ed.target)
      throw UnsupportedError("self-loop edges are not supported; model a loop as two edges");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw ValidationError("edge length must be strictly positive and finite");
    g.incidence_[static_cast<size_t>(ed.source)].push_back({e, true});
    g.incidence_[static_cast<size_t>(ed.target)].push_back({e, false});
  }

  for (const auto& [v, c] : conditions) {
    if (v < 0 || v >= vertex_count) throw ValidationError(fmt_msg("condition on unknown vertex", v));
    g.conditions_[static_cast<size_t>(v)] = c;
  }
  for (const auto& [v, name] : labels) {
    if (v < 0 || v >= vertex_count) throw ValidationError(fmt_msg("label on unknown vertex", v));
    g.labels_[static_cast<size_t>(v)] = name;
  }

  // connectivity via BFS over the incidence lists
  std::vector<char> seen(static_cast<size_t>(vertex_count), 0);
  std::queue<VertexId> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (const Incidence& inc : g.incidence_[static_cast<size_t>(v)]) {
      VertexId w = g.endpoint(inc.edge, !inc.at_source);
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  g.connected_ = (reached == vertex_count);
  return g;
}

bool MetricGraph::has_dirichlet() const {
  return std::any_of(conditions_.begin(), conditions_.end(),
                     [](VertexCondition c) { return c == VertexCondition::Dirichlet; });
}

std::optional<VertexId> MetricGraph::vertex_by_label(const std::string& label) const {
  for (VertexId v = 0; v < vertex_count(); ++v)
    if (labels_[static_cast<size_t>(v)] == label) return v;
  return std::nullopt;
}

double MetricGraph::total_length() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.length;
  return s;
}

double MetricGraph::shortest_edge() const {
  double s = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) s = std::min(s, e.length);
  return s;
}

bool is_tree(const MetricGraph& g) {
  return g.connected() && g.edge_count() == g.vertex_count() - 1;
}

std::vector<VertexId> boundary_vertices(const MetricGraph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) out.push_back(v);
  return out;
}

std::vector<SplitPart> split_at_vertex(const MetricGraph& g, VertexId v) {
  if (!g.valid_vertex(v)) throw ValidationError(fmt_msg("unknown vertex", v));
  if (!is_tree(g)) throw UnsupportedError("split_at_vertex requires a tree");

  const auto& incs = g.incidences(v);
  std::vector<SplitPart> parts;
  parts.reserve(incs.size());

  for (const Incidence& root_inc : incs) {
    // Collect the branch hanging off v through root_inc. On a tree every
    // incident edge starts a distinct component of g - v, and a BFS from the
    // far endpoint that skips the root edge can never loop back to v.
    std::vector<char> vertex_in(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<EdgeId> branch_edges{root_inc.edge};
    VertexId start = g.endpoint(root_inc.edge, !root_inc.at_source);
    std::queue<VertexId> q;
    vertex_in[static_cast<size_t>(start)] = 1;
    q.push(start);
    while (!q.empty()) {
      VertexId w = q.front();
      q.pop();
      for (const Incidence& inc : g.incidences(w)) {
        if (inc.edge == root_inc.edge) continue;
        VertexId x = g.endpoint(inc.edge, !inc.at_source);
        if (vertex_in[static_cast<size_t>(x)]) continue;  // parent edge
        vertex_in[static_cast<size_t>(x)] = 1;
        branch_edges.push_back(inc.edge);
        q.push(x);
      }
    }

    // Local numbering: fresh copy of v first, then branch vertices ascending.
    std::map<VertexId, VertexId> local;
    local[v] = 0;
    for (VertexId w = 0; w < g.vertex_count(); ++w)
      if (vertex_in[static_cast<size_t>(w)]) local[w] = static_cast<VertexId>(local.size());

    std::vector<Edge> edges;
    edges.reserve(branch_edges.size());
    std::sort(branch_edges.begin(), branch_edges.end());
    for (EdgeId e : branch_edges) {
      const Edge& ed = g.edge(e);
      edges.push_back({local.at(ed.source), local.at(ed.target), ed.length});
    }

    std::map<VertexId, VertexCondition> conds;
    std::map<VertexId, std::string> labels;
    for (const auto& [orig, loc] : local) {
      if (g.condition(orig) == VertexCondition::Dirichlet) conds[loc] = VertexCondition::Dirichlet;
      if (g.label(orig)) labels[loc] = *g.label(orig);
    }
    parts.push_back({build_graph(static_cast<int>(local.size()), edges, conds, labels), 0});
  }
  return parts;
}

MetricGraph glue_graphs(const std::vector<MetricGraph>& parts,
                        const std::vector<VertexId>& attach) {
  if (parts.empty()) throw ValidationError("glue_graphs: empty parts list");
  if (attach.size() != parts.size())
    throw ValidationError("glue_graphs: need exactly one attach vertex per part");
  for (size_t i = 0; i < parts.size(); ++i)
    if (!parts[i].valid_vertex(attach[i]))
      throw ValidationError(fmt_msg("glue_graphs: attach vertex out of range in part", static_cast<long long>(i)));

  // Vertex 0 of the result is the merged vertex; the remaining vertices of
  // each part follow in part order, keeping their relative order.
  int total = 1;
  std::vector<std::vector<VertexId>> remap(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    remap[i].assign(static_cast<size_t>(parts[i].vertex_count()), -1);
    for (VertexId v = 0; v < parts[i].vertex_count(); ++v)
      remap[i][static_cast<size_t>(v)] = (v == attach[i]) ? 0 : total++;
  }

  std::vector<Edge> edges;
  std::map<VertexId, VertexCondition> conds;
  std::map<VertexId, std::string> labels;
  bool attach_dirichlet = false;
  for (size_t i = 0; i < parts.size(); ++i) {
    const MetricGraph& p = parts[i];
    for (const Edge& ed : p.edges())
      edges.push_back({remap[i][static_cast<size_t>(ed.source)],
                       remap[i][static_cast<size_t>(ed.target)], ed.length});
    for (VertexId v = 0; v < p.vertex_count(); ++v) {
      VertexId nv = remap[i][static_cast<size_t>(v)];
      if (p.condition(v) == VertexCondition::Dirichlet) {
        if (nv == 0)
          attach_dirichlet = true;
        else
          conds[nv] = VertexCondition::Dirichlet;
      }
      if (nv != 0 && p.label(v)) labels[nv] = *p.label(v);
    }
  }
  if (attach_dirichlet) conds[0] = VertexCondition::Dirichlet;
  if (parts[0].label(attach[0])) labels[0] = *parts[0].label(attach[0]);

  return build_graph(total, edges, conds, labels);
}

GraphPoint vertex_point(const MetricGraph& g, VertexId v) {
  if (!g.valid_vertex(v)) throw ValidationError(fmt_msg("unknown vertex", v));
  const auto& incs = g.incidences(v);
  if (incs.empty()) throw ValidationError(fmt_msg("isolated vertex has no point representation", v));
  Incidence best = incs[0];
  for (const Incidence& inc : incs)
    if (inc.edge < best.edge || (inc.edge == best.edge && inc.at_source && !best.at_source)) best = inc;
  return {best.edge, best.at_source ? 0.0 : g.edge(best.edge).length};
}

CanonicalPoint canonical_point(const MetricGraph& g, const GraphPoint& p) {
  if (!g.valid_edge(p.edge)) throw ValidationError(fmt_msg("unknown edge", p.edge));
  const double len = g.edge(p.edge).length;
  if (!(p.t >= 0.0 && p.t <= len)) throw ValidationError("point coordinate outside [0, length]");
  if (p.t == 0.0 || p.t == len) {
    VertexId v = g.endpoint(p.edge, p.t == 0.0);
    GraphPoint vp = vertex_point(g, v);
    return {vp.edge, vp.t, v};
  }
  return {p.edge, p.t, std::nullopt};
}

std::vector<double> vertex_distances(const MetricGraph& g, VertexId source) {
  if (!g.valid_vertex(source)) throw ValidationError(fmt_msg("unknown vertex", source));
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(g.vertex_count()), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<size_t>(source)] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(v)]) continue;
    for (const Incidence& inc : g.incidences(v)) {
      VertexId w = g.endpoint(inc.edge, !inc.at_source);
      double nd = d + g.edge(inc.edge).length;
      if (nd < dist[static_cast<size_t>(w)]) {
        dist[static_cast<size_t>(w)] = nd;
        heap.push({nd, w});
      }
    }
  }
  return dist;
}

double distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q) {
  if (!g.connected()) throw ValidationError("distance requires a connected graph");
  canonical_point(g, p);  // range checks
  canonical_point(g, q);

  const Edge& ep = g.edge(p.edge);
  const Edge& eq = g.edge(q.edge);
  double best = std::numeric_limits<double>::infinity();
  if (p.edge == q.edge) best = std::abs(p.t - q.t);

  // route through edge endpoints
  const double dp[2] = {p.t, ep.length - p.t};
  const VertexId vp[2] = {ep.source, ep.target};
  const double dq[2] = {q.t, eq.length - q.t};
  const VertexId vq[2] = {eq.source, eq.target};
  for (int i = 0; i < 2; ++i) {
    std::vector<double> dv = vertex_distances(g, vp[i]);
    for (int j = 0; j < 2; ++j)
      best = std::min(best, dp[i] + dv[static_cast<size_t>(vq[j])] + dq[j]);
  }
  return best;
}

namespace {

// Farthest vertex from `from`, ties broken by smallest id.
std::pair<VertexId, double> farthest_vertex(const MetricGraph& g, VertexId from) {
  std::vector<double> d = vertex_distances(g, from);
  VertexId best = from;
  double bd = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (d[static_cast<size_t>(v)] > bd) {
      bd = d[static_cast<size_t>(v)];
      best = v;
    }
  return {best, bd};
}

}  // namespace

Diameter diameter(const MetricGraph& g) {
  if (!is_tree(g)) throw UnsupportedError("diameter is only supported on trees");
  if (g.edge_count() == 0) throw UnsupportedError("diameter of a single-vertex graph is undefined");
  auto [u, du] = farthest_vertex(g, 0);
  auto [w, dw] = farthest_vertex(g, u);
  Diameter out;
  out.length = dw;
  out.a = canonical_point(g, vertex_point(g, std::min(u, w)));
  out.b = canonical_point(g, vertex_point(g, std::max(u, w)));
  return out;
}

namespace {

// Rooted canonical code: children sorted by (length, subtree code); lengths
// rendered as hexfloats so the encoding is exact.
std::string rooted_code(const MetricGraph& g, VertexId v, EdgeId parent_edge) {
  std::vector<std::string> children;
  for (const Incidence& inc : g.incidences(v)) {
    if (inc.edge == parent_edge) continue;
    VertexId w = g.endpoint(inc.edge, !inc.at_source);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%a", g.edge(inc.edge).length);
    children.push_back(std::string("(") + buf + ":" + rooted_code(g, w, inc.edge) + ")");
  }
  std::sort(children.begin(), children.end());
  std::string out(1, g.condition(v) == VertexCondition::Dirichlet ? 'D' : 'S');
  for (const std::string& c : children) out += c;
  return out;
}

}  // namespace

std::string canonical_tree_code(const MetricGraph& g) {
  if (!is_tree(g)) throw UnsupportedError("canonical_tree_code requires a tree");
  std::string best;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::string code = rooted_code(g, v, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace qgraph
