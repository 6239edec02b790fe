#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qgraph/fem.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/random_tree.hpp"
#include "qgraph/spectral.hpp"

using namespace qgraph;

namespace {

const double kPi = 3.14159265358979323846;

MetricGraph interval() { return build_graph(2, {{0, 1, 1.0}}); }

}  // namespace

TEST_CASE("Neumann interval eigenvalues at h = 1e-3") {
  auto evs = fem_eigenvalues(interval(), 1e-3, 3);
  REQUIRE(evs.size() == 3);
  CHECK(std::abs(evs[0]) < 1e-8);
  CHECK(evs[1] == doctest::Approx(kPi * kPi).epsilon(1e-4));
  CHECK(evs[2] == doctest::Approx(4 * kPi * kPi).epsilon(1e-4));
  // P1 eigenvalues approach from above
  CHECK(evs[1] >= kPi * kPi);
  CHECK(evs[2] >= 4 * kPi * kPi);
}

TEST_CASE("Dirichlet and mixed interval eigenvalues") {
  MetricGraph dir = build_graph(2, {{0, 1, 1.0}},
                                {{0, VertexCondition::Dirichlet}, {1, VertexCondition::Dirichlet}});
  auto evs = fem_eigenvalues(dir, 1e-3, 2);
  CHECK(evs[0] == doctest::Approx(kPi * kPi).epsilon(1e-5));
  CHECK(evs[1] == doctest::Approx(4 * kPi * kPi).epsilon(1e-5));

  MetricGraph mixed = build_graph(2, {{0, 1, 1.0}}, {{0, VertexCondition::Dirichlet}});
  auto mevs = fem_eigenvalues(mixed, 1e-3, 2);
  CHECK(mevs[0] == doctest::Approx(kPi * kPi / 4).epsilon(1e-5));
  CHECK(mevs[1] == doctest::Approx(9 * kPi * kPi / 4).epsilon(1e-5));
}

TEST_CASE("equilateral star double eigenvalue shows up twice") {
  MetricGraph g = build_graph(4, {{0, 1, 0.5}, {0, 2, 0.5}, {0, 3, 0.5}});
  auto evs = fem_eigenvalues(g, 1e-3, 4);
  CHECK(std::abs(evs[0]) < 1e-8);
  CHECK(evs[1] == doctest::Approx(kPi * kPi).epsilon(1e-5));
  CHECK(evs[2] == doctest::Approx(kPi * kPi).epsilon(1e-5));
  CHECK(evs[3] == doctest::Approx(4 * kPi * kPi).epsilon(1e-4));
}

TEST_CASE("fem matches the exact solver on a random tree") {
  MetricGraph g = random_tree(321, 5, 0.3, 0.9);
  auto exact = find_eigenvalues(g, 40.0);
  std::vector<double> flat;
  for (const auto& p : exact)
    for (int m = 0; m < p.multiplicity; ++m) flat.push_back(p.mu);
  auto fem = fem_eigenvalues(g, 1e-3, static_cast<int>(flat.size()));
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] < 1e-12)
      CHECK(std::abs(fem[i]) < 1e-8);
    else
      CHECK(fem[i] == doctest::Approx(flat[i]).epsilon(2e-5));
  }
}

TEST_CASE("second-order convergence on the interval") {
  double exact = kPi * kPi;
  double e1 = fem_eigenvalues(interval(), 4e-3, 2)[1] - exact;
  double e2 = fem_eigenvalues(interval(), 1e-3, 2)[1] - exact;
  REQUIRE(e1 > 0.0);
  REQUIRE(e2 > 0.0);
  double order = std::log(e1 / e2) / std::log(4.0);
  CHECK(order > 1.9);
  CHECK(order < 2.1);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(fem_eigenvalues(interval(), 0.0, 1), DomainError);
  CHECK_THROWS_AS(fem_eigenvalues(interval(), 2.0, 1), DomainError);  // h >= shortest edge
  CHECK_THROWS_AS(fem_eigenvalues(interval(), 1e-3, 0), ValidationError);
  CHECK_THROWS_AS(fem_eigenvalues(interval(), 0.5, 100), DomainError);  // count > dofs
}

TEST_CASE("dense modes are mass-orthonormal and match the cosine") {
  auto modes = fem_modes_dense(interval(), 0.01, 3);
  REQUIRE(modes.size() == 3);
  CHECK(std::abs(modes[0].mu) < 1e-10);
  CHECK(modes[1].mu == doctest::Approx(kPi * kPi).epsilon(1e-3));

  const auto& v = modes[1].values[0];
  REQUIRE(v.size() == 101);
  double s2 = std::sqrt(2.0);
  double sgn = v.front() > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double x = static_cast<double>(i) / 100.0;
    CHECK(sgn * v[i] == doctest::Approx(s2 * std::cos(kPi * x)).epsilon(5e-3));
  }

  // trapezoid-ish mass check: sum w * v_i^2 over elements ~ 1
  double q = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    q += 0.01 * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]) / 3.0;
  CHECK(q == doctest::Approx(1.0).epsilon(1e-6));

  MetricGraph dir = build_graph(2, {{0, 1, 1.0}}, {{0, VertexCondition::Dirichlet}});
  auto dmodes = fem_modes_dense(dir, 0.01, 1);
  CHECK(dmodes[0].values[0].front() == 0.0);  // Dirichlet endpoint pinned
  CHECK(dmodes[0].mu == doctest::Approx(kPi * kPi / 4).epsilon(1e-3));
}
