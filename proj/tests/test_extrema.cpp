#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qgraph/extrema.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/spectral.hpp"
#include "qgraph/star_path.hpp"

using namespace qgraph;

namespace {

const double kPi = 3.14159265358979323846;

MetricGraph interval() { return build_graph(2, {{0, 1, 1.0}}); }

}  // namespace

TEST_CASE("edge extrema of trigonometric waves") {
  // cos(2 pi t) on [0, 1]: endpoints plus interior criticals at 1/2 (and the
  // boundary-critical values at 0 and 1 are endpoints anyway)
  auto ex = edge_extrema({0, 1.0, 0.0}, 2 * kPi, 1.0);
  REQUIRE(ex.size() == 3);
  CHECK(ex[0].t == 0.0);
  CHECK(ex[0].value == doctest::Approx(1.0));
  CHECK(ex[1].t == doctest::Approx(0.5));
  CHECK(ex[1].value == doctest::Approx(-1.0));
  CHECK(ex[2].t == doctest::Approx(1.0));

  // sin(pi t): single interior max at 1/2, exact value 1
  auto sx = edge_extrema({0, 0.0, 1.0}, kPi, 1.0);
  REQUIRE(sx.size() == 3);
  CHECK(sx[1].t == doctest::Approx(0.5));
  CHECK(sx[1].value == doctest::Approx(1.0));

  // affine k = 0 case: only the endpoints
  auto ax = edge_extrema({0, 2.0, -1.0}, 0.0, 3.0);
  REQUIRE(ax.size() == 2);
  CHECK(ax[0].value == doctest::Approx(2.0));
  CHECK(ax[1].value == doctest::Approx(-1.0));

  CHECK_THROWS_AS(edge_extrema({0, 1.0, 0.0}, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(edge_extrema({0, 1.0, 0.0}, -1.0, 1.0), DomainError);
}

TEST_CASE("interval second eigenfunction: extrema at the two ends") {
  MetricGraph g = interval();
  auto f = eigenfunctions(g, kPi * kPi).front();
  ExtremumReport r = global_extrema(g, f, kPi);
  REQUIRE(r.max_points.size() == 1);
  REQUIRE(r.min_points.size() == 1);
  CHECK(r.max_points[0].vertex == 0);
  CHECK(r.min_points[0].vertex == 1);
  CHECK(r.max_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.min_value == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.extrema_distance == doctest::Approx(1.0));
  CHECK(r.diameter == doctest::Approx(1.0));
  CHECK(r.boundary_margin == 0.0);
  CHECK(!r.degenerate);
  CHECK(hot_spots_holds(r, 1e-9));
}

TEST_CASE("an interior bump violates the hot-spots property") {
  MetricGraph g = interval();
  EdgeFunction f = {{0, 0.0, 1.0}};  // sin(pi t), max at t = 1/2
  ExtremumReport r = global_extrema(g, f, kPi);
  REQUIRE(r.max_points.size() == 1);
  CHECK(!r.max_points[0].vertex.has_value());
  CHECK(r.max_points[0].t == doctest::Approx(0.5));
  CHECK(r.boundary_margin == doctest::Approx(0.5));
  CHECK(!hot_spots_holds(r, 1e-6));
  // min is attained at both endpoints simultaneously
  CHECK(r.min_points.size() == 2);
  CHECK(r.extrema_distance == doctest::Approx(0.5));
}

TEST_CASE("constant functions are flagged degenerate") {
  MetricGraph g = interval();
  EdgeFunction f = {{0, 1.0, 0.0}};  // constant 1 at k = 0
  ExtremumReport r = global_extrema(g, f, 0.0);
  CHECK(r.degenerate);
  CHECK(r.max_value == doctest::Approx(1.0));
  CHECK(r.min_value == doctest::Approx(1.0));
}

TEST_CASE("nodal domains on the interval") {
  MetricGraph g = interval();
  auto f2 = eigenfunctions(g, kPi * kPi).front();
  NodalReport n2 = nodal_domains(g, f2, kPi);
  CHECK(n2.domain_count == 2);
  REQUIRE(n2.zeros.size() == 1);
  CHECK(n2.zeros[0].t == doctest::Approx(0.5));
  CHECK(n2.zero_edges.empty());

  auto f3 = eigenfunctions(g, 4 * kPi * kPi).front();
  NodalReport n3 = nodal_domains(g, f3, 2 * kPi);
  CHECK(n3.domain_count == 3);
  CHECK(n3.zeros.size() == 2);

  EdgeFunction zero = {{0, 0.0, 0.0}};
  CHECK_THROWS_AS(nodal_domains(g, zero, kPi), DomainError);
}

TEST_CASE("joined star-path eigenfunction: zero edges and two domains") {
  StarPathFamily fam = build_star_path_family(0.05);
  Eigenpair p = first_nonzero_eigenvalue(fam.joined);
  const EdgeFunction& f = p.basis.front();
  NodalReport n = nodal_domains(fam.joined, f, p.k);
  CHECK(n.zero_edges == std::vector<EdgeId>{0, 1});  // the whole path is dead
  CHECK(n.domain_count == 2);

  ExtremumReport r = global_extrema(fam.joined, f, p.k);
  CHECK(r.extrema_distance == doctest::Approx(1.8).epsilon(1e-9));
  CHECK(r.diameter == doctest::Approx(2.0));
  CHECK(hot_spots_holds(r, 1e-6 * fam.joined.shortest_edge()));
  CHECK(r.max_points.size() == 2);
  CHECK(r.min_points.size() == 2);
}

TEST_CASE("sup norms, global and per-edge") {
  MetricGraph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  // sin(pi t) on edge 0, zero on edge 1
  EdgeFunction f = {{0, 0.0, 1.0}, {1, 0.0, 0.0}};
  CHECK(sup_norm(g, f, kPi) == doctest::Approx(1.0));
  CHECK(sup_norm_on_edges(g, f, kPi, {0}) == doctest::Approx(1.0));
  CHECK(sup_norm_on_edges(g, f, kPi, {1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sup_norm_on_edges(g, f, kPi, {7}), ValidationError);
}

TEST_CASE("degenerate eigenvalue: every basis combination keeps hot spots") {
  MetricGraph g = build_graph(4, {{0, 1, 0.5}, {0, 2, 0.5}, {0, 3, 0.5}});
  Eigenpair p = first_nonzero_eigenvalue(g);
  REQUIRE(p.multiplicity == 2);
  double tol = 1e-6 * g.shortest_edge();
  for (const auto& f : p.basis) {
    ExtremumReport r = global_extrema(g, f, p.k);
    CHECK(hot_spots_holds(r, tol));
  }
  // a lopsided combination: extrema still at the tips
  EdgeFunction combo = p.basis[0];
  for (std::size_t e = 0; e < combo.size(); ++e) {
    combo[e].a = 0.8 * p.basis[0][e].a + 0.6 * p.basis[1][e].a;
    combo[e].b = 0.8 * p.basis[0][e].b + 0.6 * p.basis[1][e].b;
  }
  ExtremumReport r = global_extrema(g, combo, p.k);
  CHECK(hot_spots_holds(r, tol));
  CHECK(r.boundary_margin <= tol);
}
