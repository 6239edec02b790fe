#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Restriction of an eigenfunction to one edge, in the edge's own arclength
/// coordinate. For k > 0 it is a·cos(kt) + b·sin(kt); for k = 0 it is a + b·t.
struct EdgeWave {
  EdgeId edge = 0;
  double a = 0.0;
  double b = 0.0;
};

/// A function on the whole graph: exactly one wave per edge, index == edge id.
using EdgeFunction = std::vector<EdgeWave>;

double wave_eval(const EdgeWave& w, double k, double t);
double wave_deriv(const EdgeWave& w, double k, double t);

/// Throws ValidationError unless f has one wave per edge with matching ids.
void validate_edge_function(const MetricGraph& g, const EdgeFunction& f);

/// Value at a vertex, evaluated through its first incident edge.
double vertex_value(const MetricGraph& g, const EdgeFunction& f, double k, VertexId v);

struct Eigenpair {
  double mu = 0.0;
  double k = 0.0;
  int multiplicity = 0;
  std::vector<EdgeFunction> basis;  // L²-orthonormal, |basis| == multiplicity
};

/// Linear system encoding all vertex conditions on the per-edge coefficients
/// (a_e, b_e): columns 2e and 2e+1 hold the cos and sin coefficients of edge e.
/// Rows are unit-normalized; k² is an eigenvalue iff the matrix is singular.
struct SecularSystem {
  double k = 0.0;
  Eigen::MatrixXd matrix;
};

SecularSystem assemble_secular(const MetricGraph& g, double k);

/// Smallest singular value of the secular matrix; continuous in k and zero
/// exactly at eigenvalues.
double secular_indicator(const MetricGraph& g, double k);

struct SolverOptions {
  double zero_threshold = 1e-9;      // indicator below this accepts a root
  double multiplicity_rel = 1e-7;    // singular values < rel·σ_max span the null space
  double k_rel_tol = 1e-12;          // golden-section refinement tolerance
  double scan_step_factor = 1.0;     // scales the default grid step π/(10·L)
  int max_rescans = 2;               // extra Δk/4 passes when the Weyl alarm fires
};

/// All eigenvalues in [0, mu_max] in nondecreasing order, with multiplicities
/// and orthonormal eigenfunction bases. μ = 0 is emitted analytically. A
/// missed-root alarm (Weyl count) triggers finer rescans and eventually
/// ResolutionError.
std::vector<Eigenpair> find_eigenvalues(const MetricGraph& g, double mu_max,
                                        const SolverOptions& opts = {});

/// Orthonormal eigenfunction basis for a known eigenvalue mu; DomainError if
/// the secular indicator does not vanish at √mu.
std::vector<EdgeFunction> eigenfunctions(const MetricGraph& g, double mu,
                                         const SolverOptions& opts = {});

/// The smallest nonzero eigenvalue (μ₂ for all-Standard graphs, λ₁ when a
/// Dirichlet vertex removes the zero eigenvalue), as a full Eigenpair.
Eigenpair first_nonzero_eigenvalue(const MetricGraph& g, const SolverOptions& opts = {});

/// Closed-form ∫_Γ f dx.
double integral(const MetricGraph& g, const EdgeFunction& f, double k);

/// Closed-form L² inner product and norm.
double l2_inner(const MetricGraph& g, const EdgeFunction& f, const EdgeFunction& h, double k);
double l2_norm(const MetricGraph& g, const EdgeFunction& f, double k);

/// Worst-case vertex-condition residuals of f, for validation.
struct VertexResiduals {
  double continuity = 0.0;  // max pairwise value spread at Standard vertices
  double kirchhoff = 0.0;   // max |Σ outward derivatives| at Standard vertices
  double dirichlet = 0.0;   // max |value| at Dirichlet vertices
};
VertexResiduals vertex_residuals(const MetricGraph& g, const EdgeFunction& f, double k);

/// Copy of g with the selected edges scaled by `scale`.
MetricGraph with_scaled_edges(const MetricGraph& g, const std::vector<EdgeId>& edges,
                              double scale);

/// μ₂ (first nonzero eigenvalue) as the selected edges are scaled by each of
/// `samples` factors spaced evenly over [scale_lo, scale_hi]; ascending scale.
std::vector<std::pair<double, double>> eigenvalue_vs_length_sweep(
    const MetricGraph& g, const std::vector<EdgeId>& edges, double scale_lo,
    double scale_hi, int samples, const SolverOptions& opts = {});

}  // namespace qgraph
