#pragma once

#include "qgraph/graph.hpp"

namespace qgraph {

/// The star–path family, parametrized by epsilon in [0, 0.25): star edges
/// have length 1/2 − epsilon, the path edges have length 1.
///
///   path2:  v_l —1— v_0 —1— v_r                       (3 vertices)
///   star2:  v_0 joined to centers c_u, c_d, each carrying two pendants
///           v_u1/v_u2 resp. v_d1/v_d2, all edges 1/2 − epsilon (7 vertices)
///   joined: path2 and star2 glued at v_0               (9 vertices, 8 edges)
///
/// joined realizes its diameter 2 only along the path, while the second
/// eigenfunction lives on star2 with extrema at the four pendant leaves at
/// mutual distance 2 − 4·epsilon.
struct StarPathFamily {
  MetricGraph path2;
  MetricGraph star2;
  MetricGraph joined;
};

/// Validated star edge length 1/2 − epsilon.
double star_edge_length(double epsilon);

StarPathFamily build_star_path_family(double epsilon);

/// The single 3-star S: center c with three pendants of length 1/2 − epsilon;
/// the leaf labelled v_0 (the one star2 reflects through) optionally carries
/// a Dirichlet condition.
MetricGraph build_star(double epsilon, bool dirichlet_v0_leaf);

}  // namespace qgraph
