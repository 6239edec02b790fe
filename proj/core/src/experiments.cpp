#include "qgraph/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "qgraph/errors.hpp"
#include "qgraph/random_tree.hpp"

namespace qgraph {

namespace {

std::vector<std::string> point_labels(const MetricGraph& g, const std::vector<CanonicalPoint>& pts) {
  std::vector<std::string> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.vertex && g.label(*p.vertex))
      out.push_back(*g.label(*p.vertex));
    else if (p.vertex)
      out.push_back("v" + std::to_string(*p.vertex));
    else
      out.push_back("(interior)");
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_label_set(const std::vector<std::string>& a, std::vector<std::string> b) {
  std::sort(b.begin(), b.end());
  return a == b;
}

Eigenpair solve_mu2(const MetricGraph& g, const SolverOptions& opts) {
  try {
    return first_nonzero_eigenvalue(g, opts);
  } catch (const ResolutionError&) {
    SolverOptions finer = opts;
    finer.max_rescans += 2;
    return first_nonzero_eigenvalue(g, finer);
  }
}

EdgeFunction combine(const std::vector<EdgeFunction>& basis, const std::vector<double>& coef) {
  EdgeFunction out = basis.front();
  for (auto& w : out) {
    w.a = 0.0;
    w.b = 0.0;
  }
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t e = 0; e < out.size(); ++e) {
      out[e].a += coef[j] * basis[j][e].a;
      out[e].b += coef[j] * basis[j][e].b;
    }
  return out;
}

}  // namespace

ReproReport run_repro(double epsilon, const SolverOptions& opts) {
  StarPathFamily fam = build_star_path_family(epsilon);
  ReproReport r;
  r.epsilon = epsilon;

  r.mu2_p2 = first_nonzero_eigenvalue(fam.path2, opts).mu;
  r.mu2_s2 = first_nonzero_eigenvalue(fam.star2, opts).mu;
  Eigenpair pg = first_nonzero_eigenvalue(fam.joined, opts);
  r.mu2_gamma = pg.mu;
  r.gamma_multiplicity = pg.multiplicity;
  r.lambda1_s = first_nonzero_eigenvalue(build_star(epsilon, true), opts).mu;

  const EdgeFunction& f = pg.basis.front();
  double k = pg.k;
  double fsup = sup_norm(fam.joined, f, k);
  r.sup_p2_rel = sup_norm_on_edges(fam.joined, f, k, {0, 1}) / fsup;

  ExtremumReport er = global_extrema(fam.joined, f, k);
  r.extrema_distance = er.extrema_distance;
  r.diameter = er.diameter;
  r.boundary_margin = er.boundary_margin;
  r.max_labels = point_labels(fam.joined, er.max_points);
  r.min_labels = point_labels(fam.joined, er.min_points);

  NodalReport nr = nodal_domains(fam.joined, f, k);
  r.nodal_count = nr.domain_count;
  r.nodal_zero_edges = static_cast<int>(nr.zero_edges.size());

  r.ordering_ok = r.mu2_s2 < r.mu2_p2;
  r.equality_ok = std::abs(r.mu2_gamma - r.mu2_s2) < 1e-8;
  r.min_consistency_ok = std::abs(r.mu2_gamma - std::min(r.mu2_p2, r.mu2_s2)) < 1e-8;
  r.gamma_simple = pg.multiplicity == 1;
  r.p2_vanishes = r.sup_p2_rel < 1e-8;
  r.extrema_labels_ok = (same_label_set(r.max_labels, {"v_u1", "v_u2"}) &&
                         same_label_set(r.min_labels, {"v_d1", "v_d2"})) ||
                        (same_label_set(r.max_labels, {"v_d1", "v_d2"}) &&
                         same_label_set(r.min_labels, {"v_u1", "v_u2"}));
  r.distance_ok = std::abs(r.extrema_distance - (2.0 - 4.0 * epsilon)) <= 1e-8;
  r.strict_distance_ok = epsilon > 0.0 ? (r.extrema_distance < r.diameter - 1e-9) : true;
  r.hotspots_at_boundary = hot_spots_holds(er, 1e-6 * fam.joined.shortest_edge());
  r.dirichlet_identity_ok = std::abs(r.lambda1_s - r.mu2_s2) < 1e-9;
  r.nodal_ok = r.nodal_count == 2;
  r.all_pass = r.ordering_ok && r.equality_ok && r.min_consistency_ok && r.gamma_simple &&
               r.p2_vanishes && r.extrema_labels_ok && r.distance_ok && r.strict_distance_ok &&
               r.hotspots_at_boundary && r.dirichlet_identity_ok && r.nodal_ok;
  return r;
}

MetricGraph add_pendant(const MetricGraph& g, VertexId v, double length) {
  if (!g.valid_vertex(v)) throw ValidationError("add_pendant: vertex out of range");
  if (!(length > 0.0) || !std::isfinite(length))
    throw ValidationError("add_pendant: pendant length must be positive and finite");
  std::vector<Edge> edges = g.edges();
  edges.push_back({v, g.vertex_count(), length});
  std::map<VertexId, VertexCondition> conds;
  std::map<VertexId, std::string> labels;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    if (g.condition(u) != VertexCondition::Standard) conds[u] = g.condition(u);
    if (g.label(u)) labels[u] = *g.label(u);
  }
  return build_graph(g.vertex_count() + 1, edges, conds, labels);
}

MonotonicityReport run_monotonicity(const MetricGraph& g, VertexId v, double pendant_length,
                                    const SolverOptions& opts) {
  if (!g.valid_vertex(v)) throw ValidationError("monotonicity: vertex out of range");
  MonotonicityReport r;
  Eigenpair before = solve_mu2(g, opts);
  r.mu2_before = before.mu;
  r.pendant_length = pendant_length;

  double val = 0.0, fsup = 0.0;
  for (const auto& fb : before.basis) {
    double x = vertex_value(g, fb, before.k, v);
    if (std::abs(x) > std::abs(val)) {
      val = x;
      fsup = sup_norm(g, fb, before.k);
    }
  }
  if (fsup == 0.0) fsup = sup_norm(g, before.basis.front(), before.k);
  r.vertex_value = val;

  Eigenpair after = solve_mu2(add_pendant(g, v, pendant_length), opts);
  r.mu2_after = after.mu;

  r.decreased = (r.mu2_before - r.mu2_after) > 1e-6;
  r.expected_strict = std::abs(val) > 1e-6 * fsup;
  r.weak_ok = r.mu2_after <= r.mu2_before * (1.0 + 1e-9) + 1e-12;
  return r;
}

SurveyRecord evaluate_survey_tree(const MetricGraph& g, std::uint64_t seed, std::uint64_t combo_seed,
                                  const SurveyOptions& opts) {
  SurveyRecord rec;
  rec.seed = seed;
  rec.n_vertices = g.vertex_count();
  rec.n_edges = g.edge_count();
  rec.total_length = g.total_length();
  rec.tol = 1e-6 * g.shortest_edge();
  try {
    Eigenpair p = solve_mu2(g, opts.solver);
    rec.mu2 = p.mu;
    rec.multiplicity = p.multiplicity;

    std::vector<EdgeFunction> funcs = p.basis;
    if (p.multiplicity > 1 && opts.combos > 0) {
      DetRng rng(combo_seed);
      for (int c = 0; c < opts.combos; ++c) {
        std::vector<double> coef(p.basis.size());
        double nrm = 0.0;
        do {
          nrm = 0.0;
          for (auto& x : coef) {
            x = rng.gaussian();
            nrm += x * x;
          }
          nrm = std::sqrt(nrm);
        } while (nrm < 1e-12);
        for (auto& x : coef) x /= nrm;
        funcs.push_back(combine(p.basis, coef));
      }
    }

    rec.hotspots_ok = true;
    bool first = true;
    for (const auto& f : funcs) {
      ExtremumReport er = global_extrema(g, f, p.k);
      rec.boundary_margin = std::max(rec.boundary_margin, er.boundary_margin);
      if (!hot_spots_holds(er, rec.tol)) rec.hotspots_ok = false;
      rec.integral_abs = std::max(rec.integral_abs, std::abs(integral(g, f, p.k)));
      if (first) {
        rec.extrema_distance = er.extrema_distance;
        rec.diameter = er.diameter;
        rec.ratio = er.diameter > 0.0 ? er.extrema_distance / er.diameter : 0.0;
        first = false;
      }
    }
  } catch (const std::exception&) {
    rec.errored = true;
    rec.hotspots_ok = false;
  }
  return rec;
}

SurveyResult run_survey(int n, std::uint64_t seed, int max_edges, const SurveyOptions& opts) {
  if (n < 0) throw ValidationError("survey: trial count must be non-negative");
  if (max_edges < 1) throw ValidationError("survey: max_edges must be at least 1");
  if (!(opts.len_lo > 0.0) || !(opts.len_hi >= opts.len_lo))
    throw ValidationError("survey: invalid edge length range");

  SurveyResult res;
  res.all_pass = true;
  DetRng master(seed);
  for (int i = 0; i < n; ++i) {
    std::uint64_t trial_seed = master.next_u64();
    DetRng trial(trial_seed);
    int n_edges = 1 + static_cast<int>(trial.uniform_int(static_cast<std::uint64_t>(max_edges)));
    std::uint64_t tree_seed = trial.next_u64();
    std::uint64_t combo_seed = trial.next_u64();
    MetricGraph g = random_tree(tree_seed, n_edges, opts.len_lo, opts.len_hi);
    SurveyRecord rec = evaluate_survey_tree(g, trial_seed, combo_seed, opts);
    if (rec.errored || !rec.hotspots_ok) res.all_pass = false;
    res.records.push_back(std::move(rec));
  }
  if (opts.include_fixture) {
    StarPathFamily fam = build_star_path_family(0.05);
    SurveyRecord rec = evaluate_survey_tree(fam.joined, seed, seed ^ 0x9e3779b97f4a7c15ull, opts);
    rec.fixture = true;
    if (rec.errored || !rec.hotspots_ok) res.all_pass = false;
    res.records.push_back(std::move(rec));
  }

  std::vector<double> ratios;
  for (const auto& rec : res.records)
    if (!rec.errored) ratios.push_back(rec.ratio);
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    res.min_ratio = ratios.front();
    std::size_t m = ratios.size();
    res.median_ratio = (m % 2 == 1) ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
  }
  return res;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

Json point_to_json(const CanonicalPoint& p) {
  Json j;
  j["edge"] = p.edge;
  j["t"] = p.t;
  if (p.vertex)
    j["vertex"] = *p.vertex;
  else
    j["vertex"] = nullptr;
  return j;
}

Json points_to_json(const std::vector<CanonicalPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_to_json(p));
  return arr;
}

}  // namespace

Json eigenpair_to_json(const Eigenpair& p) {
  Json j;
  j["mu"] = p.mu;
  j["k"] = p.k;
  j["multiplicity"] = p.multiplicity;
  Json basis = Json::array();
  for (const auto& f : p.basis) {
    Json fn = Json::array();
    for (const auto& w : f) {
      Json wj;
      wj["edge"] = w.edge;
      wj["a"] = w.a;
      wj["b"] = w.b;
      fn.push_back(wj);
    }
    basis.push_back(fn);
  }
  j["basis"] = basis;
  return j;
}

Json extremum_report_to_json(const ExtremumReport& r) {
  Json j;
  j["max_points"] = points_to_json(r.max_points);
  j["max_value"] = r.max_value;
  j["min_points"] = points_to_json(r.min_points);
  j["min_value"] = r.min_value;
  j["extrema_distance"] = r.extrema_distance;
  if (std::isfinite(r.diameter))
    j["diameter"] = r.diameter;
  else
    j["diameter"] = nullptr;
  j["boundary_margin"] = r.boundary_margin;
  j["degenerate"] = r.degenerate;
  return j;
}

Json nodal_report_to_json(const NodalReport& r) {
  Json j;
  j["zeros"] = points_to_json(r.zeros);
  j["zero_edges"] = r.zero_edges;
  j["domain_count"] = r.domain_count;
  return j;
}

Json repro_to_json(const ReproReport& r) {
  Json j;
  j["epsilon"] = r.epsilon;
  j["mu2_p2"] = r.mu2_p2;
  j["mu2_s2"] = r.mu2_s2;
  j["mu2_gamma"] = r.mu2_gamma;
  j["gamma_multiplicity"] = r.gamma_multiplicity;
  j["lambda1_s"] = r.lambda1_s;
  j["sup_p2_rel"] = r.sup_p2_rel;
  j["extrema_distance"] = r.extrema_distance;
  j["diameter"] = r.diameter;
  j["boundary_margin"] = r.boundary_margin;
  j["max_labels"] = r.max_labels;
  j["min_labels"] = r.min_labels;
  j["nodal_count"] = r.nodal_count;
  j["nodal_zero_edges"] = r.nodal_zero_edges;
  Json checks;
  checks["ordering_ok"] = r.ordering_ok;
  checks["equality_ok"] = r.equality_ok;
  checks["min_consistency_ok"] = r.min_consistency_ok;
  checks["gamma_simple"] = r.gamma_simple;
  checks["p2_vanishes"] = r.p2_vanishes;
  checks["extrema_labels_ok"] = r.extrema_labels_ok;
  checks["distance_ok"] = r.distance_ok;
  checks["strict_distance_ok"] = r.strict_distance_ok;
  checks["hotspots_at_boundary"] = r.hotspots_at_boundary;
  checks["dirichlet_identity_ok"] = r.dirichlet_identity_ok;
  checks["nodal_ok"] = r.nodal_ok;
  j["checks"] = checks;
  j["all_pass"] = r.all_pass;
  return j;
}

Json monotonicity_to_json(const MonotonicityReport& r) {
  Json j;
  j["mu2_before"] = r.mu2_before;
  j["vertex_value"] = r.vertex_value;
  j["pendant_length"] = r.pendant_length;
  j["mu2_after"] = r.mu2_after;
  j["decreased"] = r.decreased;
  j["expected_strict"] = r.expected_strict;
  j["weak_ok"] = r.weak_ok;
  return j;
}

namespace {

Json survey_record_to_json(const SurveyRecord& r) {
  Json j;
  j["seed"] = r.seed;
  j["fixture"] = r.fixture;
  j["errored"] = r.errored;
  j["n_vertices"] = r.n_vertices;
  j["n_edges"] = r.n_edges;
  j["total_length"] = r.total_length;
  j["mu2"] = r.mu2;
  j["multiplicity"] = r.multiplicity;
  j["tol"] = r.tol;
  j["boundary_margin"] = r.boundary_margin;
  j["hotspots_ok"] = r.hotspots_ok;
  j["extrema_distance"] = r.extrema_distance;
  j["diameter"] = r.diameter;
  j["ratio"] = r.ratio;
  j["integral_abs"] = r.integral_abs;
  return j;
}

}  // namespace

Json survey_to_json(const SurveyResult& r) {
  Json j;
  Json rows = Json::array();
  for (const auto& rec : r.records) rows.push_back(survey_record_to_json(rec));
  j["records"] = rows;
  Json summary;
  summary["min_ratio"] = r.min_ratio;
  summary["median_ratio"] = r.median_ratio;
  summary["all_pass"] = r.all_pass;
  j["summary"] = summary;
  return j;
}

std::string survey_to_csv(const SurveyResult& r) {
  std::string out =
      "seed,fixture,errored,n_vertices,n_edges,total_length,mu2,multiplicity,tol,"
      "boundary_margin,hotspots_ok,extrema_distance,diameter,ratio,integral_abs\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& rec : r.records) {
    out += std::to_string(rec.seed);
    out += ',';
    out += b(rec.fixture);
    out += ',';
    out += b(rec.errored);
    out += ',';
    out += std::to_string(rec.n_vertices);
    out += ',';
    out += std::to_string(rec.n_edges);
    out += ',';
    out += format_double(rec.total_length);
    out += ',';
    out += format_double(rec.mu2);
    out += ',';
    out += std::to_string(rec.multiplicity);
    out += ',';
    out += format_double(rec.tol);
    out += ',';
    out += format_double(rec.boundary_margin);
    out += ',';
    out += b(rec.hotspots_ok);
    out += ',';
    out += format_double(rec.extrema_distance);
    out += ',';
    out += format_double(rec.diameter);
    out += ',';
    out += format_double(rec.ratio);
    out += ',';
    out += format_double(rec.integral_abs);
    out += '\n';
  }
  out += "# min_ratio=" + format_double(r.min_ratio) +
         " median_ratio=" + format_double(r.median_ratio) + " all_pass=" + b(r.all_pass) + "\n";
  return out;
}

}  // namespace qgraph
