#pragma once

#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

struct FemOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
};

/// First `count` eigenvalues (ascending, repeated by multiplicity) of the P1
/// finite-element discretization on per-edge meshes of width ≤ h. Continuity
/// at Standard vertices is imposed by sharing the vertex DOF (Kirchhoff
/// arises naturally); Dirichlet vertices carry no DOF. Solved by inertia
/// counts (each edge's interior chain condensed onto the vertex block in
/// closed form) plus bisection, so only O(edges + vertices) memory is needed.
std::vector<double> fem_eigenvalues(const MetricGraph& g, double h, int count,
                                    const FemOptions& opts = {});

/// Number of P1 eigenvalues strictly below `mu` on meshes of width ≤ h.
/// Conforming P1 eigenvalues only overestimate the true ones, so this never
/// exceeds the exact count below `mu`; it is a cheap lower bound usable as a
/// missed-eigenvalue alarm for other backends.
int fem_count_below(const MetricGraph& g, double h, double mu);

/// Dense generalized eigensolve that also returns mode shapes, sampled at the
/// mesh nodes of each edge (index 0..n_e, source to target). Meant for small
/// meshes in tests and cross-checks; modes are mass-orthonormal.
struct FemMode {
  double mu = 0.0;
  std::vector<std::vector<double>> values;  // values[edge][node]
};
std::vector<FemMode> fem_modes_dense(const MetricGraph& g, double h, int count);

}  // namespace qgraph
