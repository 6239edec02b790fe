#include "qgraph/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>

#include "qgraph/fem.hpp"

namespace qgraph {

double wave_eval(const EdgeWave& w, double k, double t) {
  if (k > 0.0) return w.a * std::cos(k * t) + w.b * std::sin(k * t);
  return w.a + w.b * t;
}

double wave_deriv(const EdgeWave& w, double k, double t) {
  if (k > 0.0) return k * (-w.a * std::sin(k * t) + w.b * std::cos(k * t));
  return w.b;
}

void validate_edge_function(const MetricGraph& g, const EdgeFunction& f) {
  if (static_cast<int>(f.size()) != g.edge_count())
    throw ValidationError("function must define exactly one wave per edge");
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (f[static_cast<size_t>(e)].edge != e)
      throw ValidationError("edge waves must be indexed by edge id");
}

double vertex_value(const MetricGraph& g, const EdgeFunction& f, double k, VertexId v) {
  validate_edge_function(g, f);
  const auto& incs = g.incidences(v);
  if (incs.empty()) throw ValidationError("vertex has no incident edge");
  const Incidence& inc = incs.front();
  double t = inc.at_source ? 0.0 : g.edge(inc.edge).length;
  return wave_eval(f[static_cast<size_t>(inc.edge)], k, t);
}

SecularSystem assemble_secular(const MetricGraph& g, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("secular system requires k > 0");
  const int n = 2 * g.edge_count();
  SecularSystem sys;
  sys.k = k;
  sys.matrix = Eigen::MatrixXd::Zero(n, n);

  auto value_coef = [&](const Incidence& inc, double& ca, double& cb) {
    if (inc.at_source) {
      ca = 1.0;
      cb = 0.0;
    } else {
      double kl = k * g.edge(inc.edge).length;
      ca = std::cos(kl);
      cb = std::sin(kl);
    }
  };
  // Outward derivative convention: +f'(0) at the source end, -f'(length) at
  // the target end.
  auto deriv_coef = [&](const Incidence& inc, double& ca, double& cb) {
    if (inc.at_source) {
      ca = 0.0;
      cb = k;
    } else {
      double kl = k * g.edge(inc.edge).length;
      ca = k * std::sin(kl);
      cb = -k * std::cos(kl);
    }
  };

  int row = 0;
  double ca, cb;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& incs = g.incidences(v);
    if (incs.empty()) continue;
    if (g.condition(v) == VertexCondition::Dirichlet) {
      for (const Incidence& inc : incs) {
        value_coef(inc, ca, cb);
        sys.matrix(row, 2 * inc.edge) += ca;
        sys.matrix(row, 2 * inc.edge + 1) += cb;
        ++row;
      }
    } else {
      for (size_t i = 0; i + 1 < incs.size(); ++i) {
        value_coef(incs[i], ca, cb);
        sys.matrix(row, 2 * incs[i].edge) += ca;
        sys.matrix(row, 2 * incs[i].edge + 1) += cb;
        value_coef(incs[i + 1], ca, cb);
        sys.matrix(row, 2 * incs[i + 1].edge) -= ca;
        sys.matrix(row, 2 * incs[i + 1].edge + 1) -= cb;
        ++row;
      }
      for (const Incidence& inc : incs) {
        deriv_coef(inc, ca, cb);
        sys.matrix(row, 2 * inc.edge) += ca;
        sys.matrix(row, 2 * inc.edge + 1) += cb;
      }
      ++row;
    }
  }

  for (int r = 0; r < n; ++r) {
    double nrm = sys.matrix.row(r).norm();
    if (nrm > 0.0) sys.matrix.row(r) /= nrm;
  }
  return sys;
}

namespace {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.rows() <= 64) return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
}

}  // namespace

double secular_indicator(const MetricGraph& g, double k) {
  if (g.edge_count() == 0) return 1.0;
  Eigen::VectorXd sv = singular_values(assemble_secular(g, k).matrix);
  return sv(sv.size() - 1);
}

namespace {

struct EdgeGram {
  double icc, ics, iss;
};

// Exact integrals of cos·cos, cos·sin, sin·sin over [0, l] (or of the
// affine monomials 1, t, t² when k = 0).
EdgeGram edge_gram(double k, double l) {
  if (k > 0.0) {
    double s2 = std::sin(2 * k * l), c2 = std::cos(2 * k * l);
    return {l / 2 + s2 / (4 * k), (1 - c2) / (4 * k), l / 2 - s2 / (4 * k)};
  }
  return {l, l * l / 2, l * l * l / 3};
}

}  // namespace

double l2_inner(const MetricGraph& g, const EdgeFunction& f, const EdgeFunction& h, double k) {
  validate_edge_function(g, f);
  validate_edge_function(g, h);
  double s = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EdgeGram gr = edge_gram(k, g.edge(e).length);
    const EdgeWave& u = f[static_cast<size_t>(e)];
    const EdgeWave& v = h[static_cast<size_t>(e)];
    s += u.a * v.a * gr.icc + (u.a * v.b + u.b * v.a) * gr.ics + u.b * v.b * gr.iss;
  }
  return s;
}

double l2_norm(const MetricGraph& g, const EdgeFunction& f, double k) {
  return std::sqrt(std::max(0.0, l2_inner(g, f, f, k)));
}

double integral(const MetricGraph& g, const EdgeFunction& f, double k) {
  validate_edge_function(g, f);
  double s = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double l = g.edge(e).length;
    const EdgeWave& w = f[static_cast<size_t>(e)];
    if (k > 0.0)
      s += w.a * std::sin(k * l) / k + w.b * (1 - std::cos(k * l)) / k;
    else
      s += w.a * l + w.b * l * l / 2;
  }
  return s;
}

VertexResiduals vertex_residuals(const MetricGraph& g, const EdgeFunction& f, double k) {
  validate_edge_function(g, f);
  VertexResiduals r;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& incs = g.incidences(v);
    if (incs.empty()) continue;
    double vmin = 0.0, vmax = 0.0, ksum = 0.0, vabs = 0.0;
    bool first = true;
    for (const Incidence& inc : incs) {
      const EdgeWave& w = f[static_cast<size_t>(inc.edge)];
      double l = g.edge(inc.edge).length;
      double val = wave_eval(w, k, inc.at_source ? 0.0 : l);
      double out = inc.at_source ? wave_deriv(w, k, 0.0) : -wave_deriv(w, k, l);
      if (first || val < vmin) vmin = val;
      if (first || val > vmax) vmax = val;
      first = false;
      ksum += out;
      vabs = std::max(vabs, std::abs(val));
    }
    if (g.condition(v) == VertexCondition::Dirichlet) {
      r.dirichlet = std::max(r.dirichlet, vabs);
    } else {
      r.continuity = std::max(r.continuity, vmax - vmin);
      r.kirchhoff = std::max(r.kirchhoff, std::abs(ksum));
    }
  }
  return r;
}

namespace {

// Null-space eigenfunction basis at a wavenumber where M(k) is singular.
// Returns an L²-orthonormal basis, sign-fixed so the boundary value of
// largest magnitude is positive (ties: smallest vertex id).
std::vector<EdgeFunction> null_basis(const MetricGraph& g, double k, const SolverOptions& opts,
                                     int* multiplicity) {
  const Eigen::MatrixXd M = assemble_secular(g, k).matrix;
  Eigen::VectorXd sv;
  Eigen::MatrixXd V;
  if (M.rows() <= 64) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    sv = svd.singularValues();
    V = svd.matrixV();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    sv = svd.singularValues();
    V = svd.matrixV();
  }
  const int n = static_cast<int>(sv.size());
  double smax = sv(0);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (sv(i) < opts.multiplicity_rel * smax) ++m;
  if (multiplicity) *multiplicity = m;
  if (m == 0) return {};

  std::vector<EdgeFunction> raw(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    EdgeFunction f;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      f.push_back({e, V(2 * e, n - m + j), V(2 * e + 1, n - m + j)});
    raw[static_cast<size_t>(j)] = std::move(f);
  }

  // L² Gram orthonormalization (the coefficient vectors are orthonormal in
  // coefficient space, not in L²).
  Eigen::MatrixXd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      G(i, j) = G(j, i) = l2_inner(g, raw[static_cast<size_t>(i)], raw[static_cast<size_t>(j)], k);
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw ResolutionError("eigenspace Gram matrix is not positive definite");
  Eigen::MatrixXd A = llt.matrixU().solve(Eigen::MatrixXd::Identity(m, m));

  std::vector<EdgeFunction> basis(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    EdgeFunction f;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      double a = 0.0, b = 0.0;
      for (int i = 0; i < m; ++i) {
        a += raw[static_cast<size_t>(i)][static_cast<size_t>(e)].a * A(i, j);
        b += raw[static_cast<size_t>(i)][static_cast<size_t>(e)].b * A(i, j);
      }
      f.push_back({e, a, b});
    }
    basis[static_cast<size_t>(j)] = std::move(f);
  }

  std::vector<VertexId> anchors = boundary_vertices(g);
  if (anchors.empty())
    for (VertexId v = 0; v < g.vertex_count(); ++v) anchors.push_back(v);
  for (EdgeFunction& f : basis) {
    double best = 0.0;
    for (VertexId v : anchors) {
      if (g.degree(v) == 0) continue;
      double val = vertex_value(g, f, k, v);
      if (std::abs(val) > std::abs(best) * (1 + 1e-12)) best = val;
    }
    if (std::abs(best) <= 1e-12) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) continue;
        double val = vertex_value(g, f, k, v);
        if (std::abs(val) > std::abs(best) * (1 + 1e-12)) best = val;
      }
    }
    if (std::abs(best) <= 1e-12) {
      for (const EdgeWave& w : f) {
        if (std::abs(w.a) > std::abs(best) * (1 + 1e-12)) best = w.a;
        if (std::abs(w.b) > std::abs(best) * (1 + 1e-12)) best = w.b;
      }
    }
    if (best < 0)
      for (EdgeWave& w : f) {
        w.a = -w.a;
        w.b = -w.b;
      }
  }
  return basis;
}

template <typename F>
double golden_min(F&& f, double lo, double hi, double rel_tol) {
  const double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > rel_tol * std::max(1.0, 0.5 * (a + b))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

struct Root {
  double k = 0.0;
  int mult = 0;
};

int multiplicity_at(const MetricGraph& g, double k, const SolverOptions& opts) {
  Eigen::VectorXd sv = singular_values(assemble_secular(g, k).matrix);
  double smax = sv(0);
  int m = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) < opts.multiplicity_rel * smax) ++m;
  return m;
}

std::vector<Root> scan_roots(const MetricGraph& g, double k_max, double step,
                             const SolverOptions& opts) {
  auto ind = [&](double k) { return secular_indicator(g, k); };
  const int n = static_cast<int>(std::ceil(k_max / step)) + 1;  // grid k_i = i·step, i = 1..n
  std::vector<double> vals(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) vals[static_cast<size_t>(i)] = ind(i * step);

  std::vector<double> ks;
  for (int i = 2; i < n; ++i) {
    if (vals[static_cast<size_t>(i)] <= vals[static_cast<size_t>(i) - 1] &&
        vals[static_cast<size_t>(i)] <= vals[static_cast<size_t>(i) + 1]) {
      double kstar = golden_min(ind, (i - 1) * step, (i + 1) * step, opts.k_rel_tol);
      if (ind(kstar) < opts.zero_threshold && kstar <= k_max * (1 + 2e-12)) ks.push_back(kstar);
    }
  }
  std::sort(ks.begin(), ks.end());

  std::vector<Root> roots;
  size_t i = 0;
  while (i < ks.size()) {
    size_t j = i + 1;
    while (j < ks.size() &&
           ks[j] - ks[j - 1] <= 10 * opts.k_rel_tol * std::max(1.0, ks[j]))
      ++j;
    double k = (j - i == 1) ? ks[i] : 0.5 * (ks[i] + ks[j - 1]);
    roots.push_back({k, multiplicity_at(g, k, opts)});
    i = j;
  }
  return roots;
}

Eigenpair zero_eigenpair(const MetricGraph& g) {
  Eigenpair zero;
  zero.mu = 0.0;
  zero.k = 0.0;
  zero.multiplicity = 1;
  EdgeFunction c;
  if (g.edge_count() > 0) {
    double v = 1.0 / std::sqrt(g.total_length());
    for (EdgeId e = 0; e < g.edge_count(); ++e) c.push_back({e, v, 0.0});
  }
  zero.basis = {c};
  return zero;
}

}  // namespace

std::vector<Eigenpair> find_eigenvalues(const MetricGraph& g, double mu_max,
                                        const SolverOptions& opts) {
  if (!(mu_max > 0.0) || !std::isfinite(mu_max)) throw ValidationError("mu_max must be positive");
  if (!g.connected()) throw ValidationError("spectrum requires a connected graph");

  std::vector<Eigenpair> out;
  if (!g.has_dirichlet()) out.push_back(zero_eigenpair(g));
  if (g.edge_count() == 0) return out;

  const double L = g.total_length();
  const double k_max = std::sqrt(mu_max);
  const double base_step = opts.scan_step_factor * M_PI / (10.0 * L);

  // Conforming P1 eigenvalues only overestimate the true ones, so the
  // discrete count below mu_max is a hard floor on the exact count: a scan
  // returning fewer roots has provably missed one. The Weyl bound alone is
  // too coarse to notice a near-degenerate pair collapsing into one grid
  // cell, while the floor cannot false-alarm.
  const double h_chk = std::min(0.5 * g.shortest_edge(), 0.05 / k_max);
  const int fem_floor = fem_count_below(g, h_chk, mu_max);

  for (int attempt = 0;; ++attempt) {
    double step = base_step / std::pow(4.0, attempt);
    std::vector<Root> roots = scan_roots(g, k_max, step, opts);
    int count = g.has_dirichlet() ? 0 : 1;
    for (const Root& r : roots) count += r.mult;
    double weyl = L * k_max / M_PI;
    if (std::abs(count - weyl) <= g.vertex_count() + 2 && count >= fem_floor) {
      for (const Root& r : roots) {
        Eigenpair p;
        p.k = r.k;
        p.mu = r.k * r.k;
        p.basis = null_basis(g, r.k, opts, &p.multiplicity);
        out.push_back(std::move(p));
      }
      return out;
    }
    if (attempt >= opts.max_rescans)
      throw ResolutionError("eigenvalue count fails the Weyl/FEM cross-check; rescan budget exhausted");
  }
}

std::vector<EdgeFunction> eigenfunctions(const MetricGraph& g, double mu,
                                         const SolverOptions& opts) {
  if (!g.connected()) throw ValidationError("spectrum requires a connected graph");
  if (mu < 0 || !std::isfinite(mu)) throw DomainError("eigenvalues are nonnegative");
  if (mu == 0.0) {
    if (g.has_dirichlet()) throw DomainError("0 is not an eigenvalue of a graph with Dirichlet vertices");
    return zero_eigenpair(g).basis;
  }
  double k = std::sqrt(mu);
  if (secular_indicator(g, k) >= opts.zero_threshold)
    throw DomainError("mu is not an eigenvalue within the solver threshold");
  int m = 0;
  return null_basis(g, k, opts, &m);
}

Eigenpair first_nonzero_eigenvalue(const MetricGraph& g, const SolverOptions& opts) {
  if (!g.connected()) throw ValidationError("spectrum requires a connected graph");
  if (g.edge_count() == 0) throw DomainError("graph without edges has no nonzero eigenvalues");

  // Pendant gluing cannot raise μ₂, so a tree's μ₂ is at most that of its
  // diameter path: a safe scan ceiling. Otherwise grow the window as needed.
  double cap;
  if (is_tree(g) && !g.has_dirichlet())
    cap = std::pow(M_PI / diameter(g).length, 2) * (1 + 1e-6);
  else
    cap = std::pow(2 * M_PI / g.total_length(), 2);
  for (int i = 0; i < 64; ++i) {
    std::vector<Eigenpair> pairs = find_eigenvalues(g, cap, opts);
    for (Eigenpair& p : pairs)
      if (p.mu > 0) return std::move(p);
    cap *= 4;
  }
  throw ResolutionError("no nonzero eigenvalue located");
}

MetricGraph with_scaled_edges(const MetricGraph& g, const std::vector<EdgeId>& edges,
                              double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("scale must be positive");
  std::set<EdgeId> sel;
  for (EdgeId e : edges) {
    if (!g.valid_edge(e)) throw ValidationError("unknown edge in scaling set");
    sel.insert(e);
  }
  std::vector<Edge> scaled = g.edges();
  for (EdgeId e : sel) scaled[static_cast<size_t>(e)].length *= scale;
  std::map<VertexId, VertexCondition> conds;
  std::map<VertexId, std::string> labels;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.condition(v) == VertexCondition::Dirichlet) conds[v] = VertexCondition::Dirichlet;
    if (g.label(v)) labels[v] = *g.label(v);
  }
  return build_graph(g.vertex_count(), scaled, conds, labels);
}

std::vector<std::pair<double, double>> eigenvalue_vs_length_sweep(
    const MetricGraph& g, const std::vector<EdgeId>& edges, double scale_lo, double scale_hi,
    int samples, const SolverOptions& opts) {
  if (!(scale_lo > 0.0) || !(scale_hi >= scale_lo)) throw ValidationError("invalid scale range");
  if (samples < 1) throw ValidationError("need at least one sample");
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < samples; ++i) {
    double s = samples == 1 ? scale_lo
                            : scale_lo + (scale_hi - scale_lo) * i / static_cast<double>(samples - 1);
    out.emplace_back(s, first_nonzero_eigenvalue(with_scaled_edges(g, edges, s), opts).mu);
  }
  return out;
}

}  // namespace qgraph
