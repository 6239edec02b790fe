#include "qgraph/star_path.hpp"

namespace qgraph {

double star_edge_length(double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 0.25))
    throw ValidationError("epsilon must lie in [0, 0.25)");
  return 0.5 - epsilon;
}

StarPathFamily build_star_path_family(double epsilon) {
  const double a = star_edge_length(epsilon);
  StarPathFamily fam;

  fam.path2 = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {},
                          {{0, "v_l"}, {1, "v_0"}, {2, "v_r"}});

  fam.star2 = build_graph(
      7, {{0, 1, a}, {0, 2, a}, {1, 3, a}, {1, 4, a}, {2, 5, a}, {2, 6, a}}, {},
      {{0, "v_0"}, {1, "c_u"}, {2, "c_d"}, {3, "v_u1"}, {4, "v_u2"}, {5, "v_d1"}, {6, "v_d2"}});

  fam.joined = build_graph(
      9,
      {{1, 0, 1.0}, {0, 2, 1.0}, {0, 3, a}, {0, 4, a}, {3, 5, a}, {3, 6, a}, {4, 7, a}, {4, 8, a}},
      {},
      {{0, "v_0"},
       {1, "v_l"},
       {2, "v_r"},
       {3, "c_u"},
       {4, "c_d"},
       {5, "v_u1"},
       {6, "v_u2"},
       {7, "v_d1"},
       {8, "v_d2"}});

  return fam;
}

MetricGraph build_star(double epsilon, bool dirichlet_v0_leaf) {
  const double a = star_edge_length(epsilon);
  std::map<VertexId, VertexCondition> conds;
  if (dirichlet_v0_leaf) conds[1] = VertexCondition::Dirichlet;
  return build_graph(4, {{0, 1, a}, {0, 2, a}, {0, 3, a}}, conds,
                     {{0, "c"}, {1, "v_0"}, {2, "p1"}, {3, "p2"}});
}

}  // namespace qgraph
