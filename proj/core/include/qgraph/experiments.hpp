#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgraph/extrema.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/io.hpp"
#include "qgraph/spectral.hpp"
#include "qgraph/star_path.hpp"

namespace qgraph {

/// Everything the star–path reproduction measures and checks at one epsilon.
/// all_pass requires every boolean check; values are reported regardless so
/// out-of-range epsilons show exactly which claims break.
struct ReproReport {
  double epsilon = 0.0;
  double mu2_p2 = 0.0;
  double mu2_s2 = 0.0;
  double mu2_gamma = 0.0;
  int gamma_multiplicity = 0;
  double lambda1_s = 0.0;  // Dirichlet star, condition at the v_0 leaf
  double sup_p2_rel = 0.0; // sup of |f| over the path edges relative to ‖f‖∞
  double extrema_distance = 0.0;
  double diameter = 0.0;
  double boundary_margin = 0.0;
  std::vector<std::string> max_labels;
  std::vector<std::string> min_labels;
  int nodal_count = 0;
  int nodal_zero_edges = 0;

  bool ordering_ok = false;           // μ₂(S²) < μ₂(P²)
  bool equality_ok = false;           // μ₂(Γ) = μ₂(S²) within 1e-8
  bool min_consistency_ok = false;    // μ₂(Γ) = min(μ₂(P²), μ₂(S²)) within 1e-8
  bool gamma_simple = false;
  bool p2_vanishes = false;           // sup_p2_rel < 1e-8
  bool extrema_labels_ok = false;     // {v_u1,v_u2} vs {v_d1,v_d2} up to global sign
  bool distance_ok = false;           // extrema_distance = 2 − 4ε within 1e-8
  bool strict_distance_ok = false;    // extrema_distance < diameter (ε > 0 only)
  bool hotspots_at_boundary = false;
  bool dirichlet_identity_ok = false; // |λ₁(S) − μ₂(S²)| < 1e-9
  bool nodal_ok = false;              // exactly 2 nodal domains
  bool all_pass = false;
};

ReproReport run_repro(double epsilon, const SolverOptions& opts = {});

struct MonotonicityReport {
  double mu2_before = 0.0;
  double vertex_value = 0.0;  // eigenfunction value at the glue vertex
  double pendant_length = 0.0;
  double mu2_after = 0.0;
  bool decreased = false;        // dropped by more than 1e-6
  bool expected_strict = false;  // |f(v)| is nonzero beyond tolerance
  bool weak_ok = false;          // μ₂ did not increase
};

MetricGraph add_pendant(const MetricGraph& g, VertexId v, double length);
MonotonicityReport run_monotonicity(const MetricGraph& g, VertexId v, double pendant_length,
                                    const SolverOptions& opts = {});

struct SurveyRecord {
  std::uint64_t seed = 0;
  bool fixture = false;
  bool errored = false;
  int n_vertices = 0;
  int n_edges = 0;
  double total_length = 0.0;
  double mu2 = 0.0;
  int multiplicity = 0;
  double tol = 0.0;              // hot-spots tolerance, 1e-6 · shortest edge
  double boundary_margin = 0.0;  // worst over basis functions and combos
  bool hotspots_ok = false;
  double extrema_distance = 0.0;
  double diameter = 0.0;
  double ratio = 0.0;  // extrema_distance / diameter
  double integral_abs = 0.0;
};

struct SurveyOptions {
  int combos = 32;  // random in-eigenspace combinations per multiple eigenvalue
  double len_lo = 0.2;
  double len_hi = 2.0;
  bool include_fixture = false;  // append joined star–path graph (ε = 0.05)
  SolverOptions solver;
};

struct SurveyResult {
  std::vector<SurveyRecord> records;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  bool all_pass = false;
};

SurveyResult run_survey(int n, std::uint64_t seed, int max_edges, const SurveyOptions& opts = {});

/// Survey row for one explicit tree (used for fixtures and one-off checks).
SurveyRecord evaluate_survey_tree(const MetricGraph& g, std::uint64_t seed, std::uint64_t combo_seed,
                                  const SurveyOptions& opts = {});

Json eigenpair_to_json(const Eigenpair& p);
Json extremum_report_to_json(const ExtremumReport& r);
Json nodal_report_to_json(const NodalReport& r);
Json repro_to_json(const ReproReport& r);
Json monotonicity_to_json(const MonotonicityReport& r);
Json survey_to_json(const SurveyResult& r);
std::string survey_to_csv(const SurveyResult& r);

/// Shortest decimal form that round-trips; used for CSV cells.
std::string format_double(double x);

}  // namespace qgraph
