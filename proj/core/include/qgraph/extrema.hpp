#pragma once

#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

struct EdgeExtremum {
  double t = 0.0;
  double value = 0.0;
};

/// Both endpoints plus every interior critical point of the wave on
/// [0, length], each with its exact value; ascending in t. Critical points of
/// a·cos(kt) + b·sin(kt) = R·cos(kt − φ) sit at t = (φ + nπ)/k with values ±R.
std::vector<EdgeExtremum> edge_extrema(const EdgeWave& w, double k, double length);

struct ExtremumReport {
  std::vector<CanonicalPoint> max_points;
  double max_value = 0.0;
  std::vector<CanonicalPoint> min_points;
  double min_value = 0.0;
  double extrema_distance = 0.0;  // min distance over (max point, min point) pairs
  double diameter = 0.0;          // NaN when the graph is not a tree
  double boundary_margin = 0.0;   // largest distance of any extremum to the nearest leaf
  bool degenerate = false;        // max ≈ min (constant function)
};

/// Global extrema over all edges' closed-form candidate sets. Value ties
/// within 1e-9·‖f‖∞ are reported together; points are canonicalized,
/// deduplicated and sorted by (edge, t).
ExtremumReport global_extrema(const MetricGraph& g, const EdgeFunction& f, double k);

/// Hot-spots property: every global extremum lies within tol of a degree-one
/// vertex.
bool hot_spots_holds(const ExtremumReport& report, double tol);

struct NodalReport {
  std::vector<CanonicalPoint> zeros;  // isolated zeros, canonicalized
  std::vector<EdgeId> zero_edges;     // edges where f vanishes identically
  int domain_count = 0;               // connected components of {f ≠ 0}
};

NodalReport nodal_domains(const MetricGraph& g, const EdgeFunction& f, double k);

double sup_norm(const MetricGraph& g, const EdgeFunction& f, double k);
double sup_norm_on_edges(const MetricGraph& g, const EdgeFunction& f, double k,
                         const std::vector<EdgeId>& edges);

}  // namespace qgraph
