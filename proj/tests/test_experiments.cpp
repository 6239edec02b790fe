#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "qgraph/experiments.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/spectral.hpp"
#include "qgraph/star_path.hpp"

using namespace qgraph;

namespace {

const double kPi = 3.14159265358979323846;

// first positive root of tan(x) = 1/sqrt(2), by bisection on sin x - cos x / sqrt(2)
double atan_inv_sqrt2() {
  double lo = 1e-9, hi = kPi / 2 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (std::sin(mid) - std::cos(mid) / std::sqrt(2.0) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("repro at eps = 0.05 reproduces every claim") {
  ReproReport r = run_repro(0.05);
  CHECK(r.all_pass);
  CHECK(r.ordering_ok);
  CHECK(r.equality_ok);
  CHECK(r.min_consistency_ok);
  CHECK(r.gamma_simple);
  CHECK(r.p2_vanishes);
  CHECK(r.extrema_labels_ok);
  CHECK(r.distance_ok);
  CHECK(r.strict_distance_ok);
  CHECK(r.hotspots_at_boundary);
  CHECK(r.dirichlet_identity_ok);
  CHECK(r.nodal_ok);

  double x0 = atan_inv_sqrt2();
  double mu2_s2_oracle = (x0 / 0.45) * (x0 / 0.45);
  CHECK(r.mu2_s2 == doctest::Approx(mu2_s2_oracle).epsilon(1e-9));
  CHECK(r.mu2_p2 == doctest::Approx(kPi * kPi / 4).epsilon(1e-9));
  CHECK(r.extrema_distance == doctest::Approx(1.8).epsilon(1e-10));
  CHECK(r.diameter == doctest::Approx(2.0));
  CHECK(r.nodal_zero_edges == 2);
}

TEST_CASE("repro at eps = 0 still passes (distance equals diameter)") {
  ReproReport r = run_repro(0.0);
  CHECK(r.all_pass);
  CHECK(r.extrema_distance == doctest::Approx(2.0));
  double x0 = atan_inv_sqrt2();
  CHECK(r.mu2_s2 == doctest::Approx(4.0 * x0 * x0).epsilon(1e-9));
}

TEST_CASE("repro past the crossover fails the ordering claims") {
  ReproReport r = run_repro(0.2);
  CHECK(!r.all_pass);
  CHECK(!r.ordering_ok);
  CHECK(!r.equality_ok);
  CHECK(r.min_consistency_ok);  // mu2(joined) still equals the min
  CHECK(!r.p2_vanishes);
  CHECK(!r.distance_ok);
  CHECK(r.dirichlet_identity_ok);
  CHECK_THROWS_AS(run_repro(0.5), ValidationError);
  CHECK_THROWS_AS(run_repro(-0.1), ValidationError);
}

TEST_CASE("pendant gluing: strict drop at an endpoint, none at a zero") {
  MetricGraph seg = build_graph(2, {{0, 1, 1.0}});
  MonotonicityReport strict = run_monotonicity(seg, 1, 0.5);
  CHECK(strict.decreased);
  CHECK(strict.expected_strict);
  CHECK(strict.weak_ok);
  CHECK(strict.mu2_before == doctest::Approx(kPi * kPi).epsilon(1e-9));
  CHECK(strict.mu2_after < strict.mu2_before - 1.0);

  MetricGraph p2 = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  MonotonicityReport flat = run_monotonicity(p2, 1, 0.7);
  CHECK(!flat.expected_strict);  // eigenfunction vanishes at the midpoint
  CHECK(flat.weak_ok);
  CHECK(std::abs(flat.mu2_after - flat.mu2_before) < 1e-9);

  CHECK_THROWS_AS(run_monotonicity(seg, 9, 0.5), ValidationError);
  CHECK_THROWS_AS(run_monotonicity(seg, 0, -1.0), ValidationError);
}

TEST_CASE("add_pendant preserves structure") {
  MetricGraph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 0.5}},
                              {{2, VertexCondition::Dirichlet}}, {{0, "root"}});
  MetricGraph h = add_pendant(g, 1, 0.25);
  CHECK(h.vertex_count() == 4);
  CHECK(h.edge_count() == 3);
  CHECK(h.edge(2).source == 1);
  CHECK(h.edge(2).target == 3);
  CHECK(h.edge(2).length == doctest::Approx(0.25));
  CHECK(h.condition(2) == VertexCondition::Dirichlet);
  CHECK(*h.label(0) == "root");
  CHECK(h.condition(3) == VertexCondition::Standard);
}

TEST_CASE("tiny pendants barely move mu_2") {
  MetricGraph seg = build_graph(2, {{0, 1, 1.0}});
  MonotonicityReport r = run_monotonicity(seg, 1, 1e-7);
  CHECK(r.weak_ok);
  CHECK(std::abs(r.mu2_after - r.mu2_before) < 1e-3);
}

TEST_CASE("survey is deterministic and byte-stable") {
  SurveyOptions opts;
  opts.include_fixture = true;
  SurveyResult a = run_survey(8, 2024, 9, opts);
  SurveyResult b = run_survey(8, 2024, 9, opts);
  CHECK(survey_to_csv(a) == survey_to_csv(b));
  CHECK(survey_to_json(a).dump() == survey_to_json(b).dump());
  REQUIRE(a.records.size() == 9);
  CHECK(a.records.back().fixture);
  CHECK(a.records.back().ratio == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(a.all_pass);
  for (const auto& rec : a.records) {
    CHECK(!rec.errored);
    CHECK(rec.hotspots_ok);
    CHECK(rec.integral_abs < 1e-8);
    CHECK(rec.mu2 > 0.0);
    CHECK(rec.ratio <= 1.0 + 1e-12);
  }
  CHECK(a.min_ratio <= a.median_ratio);
  CHECK(a.min_ratio == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("survey validation and empty runs") {
  CHECK_THROWS_AS(run_survey(-1, 1, 5), ValidationError);
  CHECK_THROWS_AS(run_survey(3, 1, 0), ValidationError);
  SurveyResult empty = run_survey(0, 1, 5);
  CHECK(empty.records.empty());
  CHECK(empty.all_pass);
}

TEST_CASE("multiplicity-two fixture exercises the combo sampling") {
  MetricGraph star = build_graph(4, {{0, 1, 0.5}, {0, 2, 0.5}, {0, 3, 0.5}});
  SurveyOptions opts;
  SurveyRecord rec = evaluate_survey_tree(star, 1, 77, opts);
  CHECK(!rec.errored);
  CHECK(rec.multiplicity == 2);
  CHECK(rec.hotspots_ok);
  CHECK(rec.integral_abs < 1e-8);
}

TEST_CASE("json serializers carry the right fields") {
  ReproReport r = run_repro(0.05);
  Json jr = repro_to_json(r);
  CHECK(jr["epsilon"] == 0.05);
  CHECK(jr["all_pass"] == true);
  CHECK(jr["checks"]["ordering_ok"] == true);
  CHECK(jr["max_labels"].size() == 2);

  MetricGraph seg = build_graph(2, {{0, 1, 1.0}});
  Eigenpair p = first_nonzero_eigenvalue(seg);
  Json jp = eigenpair_to_json(p);
  CHECK(jp["multiplicity"] == 1);
  CHECK(jp["basis"].size() == 1);
  CHECK(jp["basis"][0].size() == 1);
  CHECK(jp["basis"][0][0]["edge"] == 0);
  CHECK(jp["mu"].get<double>() == doctest::Approx(kPi * kPi).epsilon(1e-9));

  SurveyResult s = run_survey(2, 5, 4);
  Json js = survey_to_json(s);
  CHECK(js["records"].size() == 2);
  CHECK(js["summary"].contains("min_ratio"));
  std::string csv = survey_to_csv(s);
  CHECK(csv.rfind("seed,fixture,errored", 0) == 0);

  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0 - 4.0 * 0.05) == "1.8");
}
