#include "qgraph/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qgraph {

std::vector<EdgeExtremum> edge_extrema(const EdgeWave& w, double k, double length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("edge length must be positive");
  if (k < 0.0 || !std::isfinite(k)) throw DomainError("wavenumber must be nonnegative");

  std::vector<EdgeExtremum> out;
  out.push_back({0.0, wave_eval(w, k, 0.0)});
  if (k > 0.0) {
    const double r = std::hypot(w.a, w.b);
    if (r > 0.0) {
      const double phi = std::atan2(w.b, w.a);
      const double ttol = 1e-13 * std::max(1.0, length);
      for (long n = static_cast<long>(std::floor(-phi / M_PI)) - 1;; ++n) {
        double t = (phi + n * M_PI) / k;
        if (t >= length - ttol) break;
        if (t > ttol) out.push_back({t, ((n % 2 + 2) % 2 == 0) ? r : -r});
      }
    }
  }
  out.push_back({length, wave_eval(w, k, length)});
  return out;
}

namespace {

bool point_less(const CanonicalPoint& a, const CanonicalPoint& b) {
  if (a.edge != b.edge) return a.edge < b.edge;
  return a.t < b.t;
}

bool point_equal(const CanonicalPoint& a, const CanonicalPoint& b) {
  if (a.vertex && b.vertex) return *a.vertex == *b.vertex;
  if (a.vertex || b.vertex) return false;
  return a.edge == b.edge && a.t == b.t;
}

std::vector<CanonicalPoint> canonical_unique(const MetricGraph& g,
                                             const std::vector<GraphPoint>& pts) {
  std::vector<CanonicalPoint> out;
  out.reserve(pts.size());
  for (const GraphPoint& p : pts) out.push_back(canonical_point(g, p));
  std::sort(out.begin(), out.end(), point_less);
  out.erase(std::unique(out.begin(), out.end(), point_equal), out.end());
  return out;
}

}  // namespace

ExtremumReport global_extrema(const MetricGraph& g, const EdgeFunction& f, double k) {
  validate_edge_function(g, f);
  if (g.edge_count() == 0) throw ValidationError("extrema of a function on an empty graph");

  std::vector<std::pair<GraphPoint, double>> cand;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    for (const EdgeExtremum& x : edge_extrema(f[static_cast<size_t>(e)], k, g.edge(e).length))
      cand.push_back({{e, x.t}, x.value});

  double vmax = cand[0].second, vmin = cand[0].second;
  for (const auto& [p, v] : cand) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  const double fsup = std::max(std::abs(vmax), std::abs(vmin));
  const double tie = 1e-9 * fsup;

  ExtremumReport rep;
  rep.max_value = vmax;
  rep.min_value = vmin;
  rep.degenerate = (vmax - vmin) <= 2 * tie;

  std::vector<GraphPoint> maxp, minp;
  for (const auto& [p, v] : cand) {
    if (rep.degenerate || v >= vmax - tie) maxp.push_back(p);
    if (rep.degenerate || v <= vmin + tie) minp.push_back(p);
  }
  rep.max_points = canonical_unique(g, maxp);
  rep.min_points = canonical_unique(g, minp);

  rep.extrema_distance = std::numeric_limits<double>::infinity();
  for (const CanonicalPoint& p : rep.max_points)
    for (const CanonicalPoint& q : rep.min_points)
      rep.extrema_distance =
          std::min(rep.extrema_distance, distance(g, {p.edge, p.t}, {q.edge, q.t}));

  rep.diameter = is_tree(g) ? diameter(g).length : std::numeric_limits<double>::quiet_NaN();

  std::vector<VertexId> leaves = boundary_vertices(g);
  rep.boundary_margin = 0.0;
  if (leaves.empty()) {
    rep.boundary_margin = std::numeric_limits<double>::infinity();
  } else {
    auto margin_of = [&](const CanonicalPoint& p) {
      double d = std::numeric_limits<double>::infinity();
      for (VertexId bv : leaves)
        d = std::min(d, distance(g, {p.edge, p.t}, vertex_point(g, bv)));
      return d;
    };
    for (const CanonicalPoint& p : rep.max_points)
      rep.boundary_margin = std::max(rep.boundary_margin, margin_of(p));
    for (const CanonicalPoint& p : rep.min_points)
      rep.boundary_margin = std::max(rep.boundary_margin, margin_of(p));
  }
  return rep;
}

bool hot_spots_holds(const ExtremumReport& report, double tol) {
  return report.boundary_margin <= tol;
}

double sup_norm_on_edges(const MetricGraph& g, const EdgeFunction& f, double k,
                         const std::vector<EdgeId>& edges) {
  validate_edge_function(g, f);
  double s = 0.0;
  for (EdgeId e : edges) {
    if (!g.valid_edge(e)) throw ValidationError("unknown edge in sup-norm set");
    for (const EdgeExtremum& x : edge_extrema(f[static_cast<size_t>(e)], k, g.edge(e).length))
      s = std::max(s, std::abs(x.value));
  }
  return s;
}

double sup_norm(const MetricGraph& g, const EdgeFunction& f, double k) {
  std::vector<EdgeId> all(static_cast<size_t>(g.edge_count()));
  std::iota(all.begin(), all.end(), 0);
  return sup_norm_on_edges(g, f, k, all);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

NodalReport nodal_domains(const MetricGraph& g, const EdgeFunction& f, double k) {
  validate_edge_function(g, f);
  const double fsup = sup_norm(g, f, k);
  if (!(fsup > 0.0)) throw DomainError("nodal domains of the zero function");
  const double ztol = 1e-10 * fsup;

  NodalReport rep;
  std::vector<bool> edge_zero(static_cast<size_t>(g.edge_count()), false);
  std::vector<std::vector<double>> zeros(static_cast<size_t>(g.edge_count()));

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeWave& w = f[static_cast<size_t>(e)];
    const double l = g.edge(e).length;
    if (k > 0.0) {
      if (std::max(std::abs(w.a), std::abs(w.b)) <= ztol) {
        edge_zero[static_cast<size_t>(e)] = true;
        rep.zero_edges.push_back(e);
        continue;
      }
      // zeros of R·cos(kt − φ): t = (φ + π/2 + nπ)/k
      const double phi = std::atan2(w.b, w.a);
      const double lo = 1e-12 * l, hi = l * (1 - 1e-12);
      for (long n = static_cast<long>(std::floor(-0.5 - phi / M_PI)) - 1;; ++n) {
        double t = (phi + M_PI / 2 + n * M_PI) / k;
        if (t >= hi) break;
        if (t > lo) zeros[static_cast<size_t>(e)].push_back(t);
      }
    } else {
      if (std::max(std::abs(w.a), std::abs(w.a + w.b * l)) <= ztol) {
        edge_zero[static_cast<size_t>(e)] = true;
        rep.zero_edges.push_back(e);
        continue;
      }
      if (w.b != 0.0) {
        double t = -w.a / w.b;
        if (t > 1e-12 * l && t < l * (1 - 1e-12)) zeros[static_cast<size_t>(e)].push_back(t);
      }
    }
  }

  // Segment graph: the zeros split each live edge into segments which are
  // glued at vertices where f is nonzero.
  std::vector<int> seg_base(static_cast<size_t>(g.edge_count()), -1);
  int n_seg = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (edge_zero[static_cast<size_t>(e)]) continue;
    seg_base[static_cast<size_t>(e)] = n_seg;
    n_seg += static_cast<int>(zeros[static_cast<size_t>(e)].size()) + 1;
  }

  UnionFind uf(n_seg);
  std::vector<GraphPoint> point_zeros;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& incs = g.incidences(v);
    if (incs.empty()) continue;
    double fv = 0.0;
    for (const Incidence& inc : incs) {
      double l = g.edge(inc.edge).length;
      fv = std::max(fv, std::abs(wave_eval(f[static_cast<size_t>(inc.edge)], k,
                                           inc.at_source ? 0.0 : l)));
    }
    if (fv <= ztol) {
      point_zeros.push_back(vertex_point(g, v));
      continue;
    }
    int prev = -1;
    for (const Incidence& inc : incs) {
      if (edge_zero[static_cast<size_t>(inc.edge)]) continue;
      int seg = seg_base[static_cast<size_t>(inc.edge)] +
                (inc.at_source ? 0 : static_cast<int>(zeros[static_cast<size_t>(inc.edge)].size()));
      if (prev >= 0) uf.unite(prev, seg);
      prev = seg;
    }
  }

  std::vector<char> seen(static_cast<size_t>(n_seg), 0);
  for (int s = 0; s < n_seg; ++s) seen[static_cast<size_t>(uf.find(s))] = 1;
  rep.domain_count = static_cast<int>(std::count(seen.begin(), seen.end(), 1));

  for (EdgeId e = 0; e < g.edge_count(); ++e)
    for (double t : zeros[static_cast<size_t>(e)]) point_zeros.push_back({e, t});
  rep.zeros = canonical_unique(g, point_zeros);
  return rep;
}

}  // namespace qgraph
