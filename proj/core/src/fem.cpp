#include "qgraph/fem.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <utility>

namespace qgraph {

namespace {

struct Mesh {
  struct EdgeMesh {
    int n = 0;     // number of elements
    double w = 0;  // element width
  };
  std::vector<EdgeMesh> edges;
  std::vector<int> vdof;  // DOF id per vertex, -1 for Dirichlet (or isolated)
  int n_vdof = 0;
  int n_interior = 0;
};

Mesh make_mesh(const MetricGraph& g, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("mesh width must be positive");
  if (g.edge_count() == 0) throw DomainError("FEM requires at least one edge");
  if (h >= g.shortest_edge()) throw DomainError("mesh width must be smaller than the shortest edge");
  Mesh m;
  for (const Edge& e : g.edges()) {
    int n = static_cast<int>(std::ceil(e.length / h - 1e-9));
    if (n < 1) n = 1;
    m.edges.push_back({n, e.length / n});
    m.n_interior += n - 1;
  }
  m.vdof.assign(static_cast<size_t>(g.vertex_count()), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.condition(v) == VertexCondition::Standard && g.degree(v) > 0) m.vdof[static_cast<size_t>(v)] = m.n_vdof++;
  return m;
}

// One edge of K - mu·M condenses onto its endpoint DOFs in rank-one form.
// The interior chain of an n-element edge is the (n-1)×(n-1) tridiagonal
// Toeplitz with diagonal d = 2/w - 2µw/3 and offdiagonal o = -(1/w + µw/6),
// eigenvalues d + 2o·cos(jπ/n). With the discrete phase φ defined by
// d = 2|o|·cos φ, eliminating it leaves exactly
//   α·(e_s+e_t)(e_s+e_t)^T + β·(e_s-e_t)(e_s-e_t)^T,
//   α = -(|o|·sin φ/2)·tan(nφ/2),   β = (|o|·sin φ/2)·cot(nφ/2),
// while the chain itself contributes floor(nφ/π) negative pivots; if only
// one endpoint carries a DOF the contribution is |o|·sin φ·cot(nφ)·e e^T.
// φ comes from the cancellation-free identities 2|o| - d = µw and
// 2|o| + d = 4/w - µw/3; out of band the trig functions turn hyperbolic.
// Near a chain resonance one coefficient blows up, so the rank-one split is
// kept (assembling matrix entries would cancel α against β and smear the
// inertia transition); the caller turns a blown-up term into an exact
// linear constraint instead.
struct EdgeCondensed {
  int neg = 0;          // interior-chain eigenvalues below mu
  double alpha = 0.0;   // coefficient on e_s + e_t
  double beta = 0.0;    // coefficient on e_s - e_t
  double single = 0.0;  // coefficient when only one endpoint has a DOF
  double scale = 0.0;   // size of a regular coefficient, for pole detection
};

bool condense_edge(double w, double mu, int n, EdgeCondensed& out) {
  const double a = 1.0 / w + mu * w / 6.0;  // |o|
  if (!(a > 0.0) || !std::isfinite(a)) return false;
  if (mu == 0.0) {  // φ → 0 limit: β is the whole-edge conductance
    out = {0, 0.0, a / n, a / n, a / n};
    return true;
  }
  const double band_hi = 4.0 / w - mu * w / 3.0;  // 2|o| + d
  if (mu < 0.0 || band_hi <= 0.0) {
    const double gap = (mu < 0.0) ? -mu * w : -band_hi;  // 2|o|·(cosh ψ - 1)
    const double psi = 2.0 * std::asinh(std::sqrt(gap / (4.0 * a)));
    const double th = std::tanh(0.5 * n * psi);
    if (th == 0.0) return false;  // exactly at the band edge
    const double s = 0.5 * a * std::sinh(psi);
    out.scale = s;
    out.single = 2.0 * s / std::tanh(n * psi);
    if (mu < 0.0) {  // d > 2|o|: everything positive definite
      out.neg = 0;
      out.alpha = s * th;
      out.beta = s / th;
    } else {  // d < -2|o|: negative definite, parity swaps tanh/coth
      out.neg = n - 1;
      out.alpha = (n % 2 == 0) ? -s * th : -s / th;
      out.beta = (n % 2 == 0) ? -s / th : -s * th;
      out.single = -out.single;
    }
  } else {
    const double phi = 2.0 * std::asin(std::min(1.0, std::sqrt(mu * w / (4.0 * a))));
    const double nphi = n * phi;
    const double s = 0.5 * a * std::sin(phi);
    if (!(s > 0.0)) return false;
    const double t = std::tan(0.5 * nphi);
    out.neg = std::min(n - 1, static_cast<int>(std::floor(nphi / M_PI)));
    out.alpha = -s * t;
    out.beta = s / t;
    out.single = 2.0 * s / std::tan(nphi);
    out.scale = s;
  }
  return !std::isnan(out.alpha) && !std::isnan(out.beta) && !std::isnan(out.single);
}

// Inertia of K - mu·M: every edge is condensed onto the small vertex block
// in closed form, so the count costs O(edges + |V|^3) no matter how fine the
// mesh is. Rank-one directions are grouped so coincident poles of parallel
// edges merge; a group whose coefficient dwarfs its regular scale acts as a
// hard constraint (it contributes sign(c) to the inertia and removes its
// direction), which keeps transitions of the remaining block sharp even at
// chain resonances. Returns -1 when mu sits on a degenerate point and should
// be nudged.
int count_below_once(const MetricGraph& g, const Mesh& mesh, double mu) {
  const int nv = mesh.n_vdof;
  int neg = 0;
  // key {lo, hi, kind}: kind 0 → e_lo + e_hi, 1 → e_lo - e_hi, 2 → e_lo
  std::map<std::array<int, 3>, std::pair<double, double>> groups;
  auto add = [&](std::array<int, 3> key, double coef, double scale) {
    auto& slot = groups[key];
    slot.first += coef;
    slot.second = std::max(slot.second, scale);
  };

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Mesh::EdgeMesh& em = mesh.edges[static_cast<size_t>(e)];
    EdgeCondensed ec;
    if (!condense_edge(em.w, mu, em.n, ec)) return -1;
    neg += ec.neg;
    const int sd = mesh.vdof[static_cast<size_t>(g.edge(e).source)];
    const int td = mesh.vdof[static_cast<size_t>(g.edge(e).target)];
    if (sd >= 0 && td >= 0) {
      add({std::min(sd, td), std::max(sd, td), 0}, ec.alpha, ec.scale);
      add({std::min(sd, td), std::max(sd, td), 1}, ec.beta, ec.scale);
    } else if (sd >= 0 || td >= 0) {
      add({sd >= 0 ? sd : td, -1, 2}, ec.single, ec.scale);
    }
  }
  if (nv == 0) return neg;

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nv, nv);
  std::vector<std::array<int, 3>> constrained;
  for (const auto& [key, cs] : groups) {
    const double c = cs.first;
    if (std::isnan(c)) return -1;  // opposite poles collided
    if (std::abs(c) > 1e8 * cs.second) {
      if (c < 0.0) ++neg;
      constrained.push_back(key);
      continue;
    }
    S(key[0], key[0]) += c;
    if (key[2] != 2) {
      S(key[1], key[1]) += c;
      const double off = (key[2] == 0) ? c : -c;
      S(key[0], key[1]) += off;
      S(key[1], key[0]) += off;
    }
  }

  if (constrained.empty()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    for (int i = 0; i < nv; ++i)
      if (es.eigenvalues()(i) < 0) ++neg;
    return neg;
  }
  const int nc = static_cast<int>(constrained.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nv, nc);
  for (int j = 0; j < nc; ++j) {
    const auto& key = constrained[static_cast<size_t>(j)];
    C(key[0], j) = 1.0;
    if (key[2] == 0) C(key[1], j) = 1.0;
    if (key[2] == 1) C(key[1], j) = -1.0;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(C);
  const int r = static_cast<int>(qr.rank());
  if (r < nc) return -1;  // degenerate pole collision; nudge apart
  if (r == nv) return neg;
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd B = Q.rightCols(nv - r);
  Eigen::MatrixXd Sp = B.transpose() * S * B;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Sp, Eigen::EigenvaluesOnly);
  for (int i = 0; i < nv - r; ++i)
    if (es.eigenvalues()(i) < 0) ++neg;
  return neg;
}

int count_below(const MetricGraph& g, const Mesh& mesh, double mu) {
  double x = mu;
  for (int tries = 0; tries < 16; ++tries) {
    int c = count_below_once(g, mesh, x);
    if (c >= 0) return c;
    x += (std::abs(x) + 1.0) * 1e-13;
  }
  throw ResolutionError("FEM inertia count failed to stabilize");
}

}  // namespace

std::vector<double> fem_eigenvalues(const MetricGraph& g, double h, int count,
                                    const FemOptions& opts) {
  if (count < 1) throw ValidationError("count must be at least 1");
  Mesh mesh = make_mesh(g, h);
  const int ndof = mesh.n_vdof + mesh.n_interior;
  if (count > ndof) throw DomainError("count exceeds the FEM degrees of freedom");

  double wmin = mesh.edges[0].w;
  for (const auto& em : mesh.edges) wmin = std::min(wmin, em.w);
  const double hi0 = 12.0 / (wmin * wmin) * 1.000001 + 1.0;  // ≥ per-element Rayleigh bound

  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    double lo = out.empty() ? -1e-9 : out.back() - 1e-9 - 1e-12 * std::abs(out.back());
    double hi = hi0;
    while (hi - lo > opts.rel_tol * std::max(std::abs(lo), std::abs(hi)) + opts.abs_tol) {
      double mid = 0.5 * (lo + hi);
      if (count_below(g, mesh, mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(std::max(0.0, 0.5 * (lo + hi)));
  }
  return out;
}

int fem_count_below(const MetricGraph& g, double h, double mu) {
  if (!std::isfinite(mu)) throw DomainError("count threshold must be finite");
  Mesh mesh = make_mesh(g, h);
  return count_below(g, mesh, mu);
}

std::vector<FemMode> fem_modes_dense(const MetricGraph& g, double h, int count) {
  if (count < 1) throw ValidationError("count must be at least 1");
  Mesh mesh = make_mesh(g, h);
  const int ndof = mesh.n_vdof + mesh.n_interior;
  if (count > ndof) throw DomainError("count exceeds the FEM degrees of freedom");

  // Dense DOF layout: vertex DOFs first, then each edge's interior nodes.
  std::vector<int> int_off(static_cast<size_t>(g.edge_count()), 0);
  int off = mesh.n_vdof;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int_off[static_cast<size_t>(e)] = off;
    off += mesh.edges[static_cast<size_t>(e)].n - 1;
  }

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(ndof, ndof);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ndof, ndof);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Mesh::EdgeMesh& em = mesh.edges[static_cast<size_t>(e)];
    const double w = em.w;
    auto node_dof = [&](int i) -> int {
      if (i == 0) return mesh.vdof[static_cast<size_t>(g.edge(e).source)];
      if (i == em.n) return mesh.vdof[static_cast<size_t>(g.edge(e).target)];
      return int_off[static_cast<size_t>(e)] + i - 1;
    };
    const double ke[2][2] = {{1 / w, -1 / w}, {-1 / w, 1 / w}};
    const double me[2][2] = {{w / 3, w / 6}, {w / 6, w / 3}};
    for (int el = 0; el < em.n; ++el) {
      int gd[2] = {node_dof(el), node_dof(el + 1)};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          if (gd[i] < 0 || gd[j] < 0) continue;
          K(gd[i], gd[j]) += ke[i][j];
          M(gd[i], gd[j]) += me[i][j];
        }
    }
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  if (es.info() != Eigen::Success) throw ResolutionError("dense FEM eigensolve failed");

  std::vector<FemMode> modes;
  for (int j = 0; j < count; ++j) {
    FemMode mode;
    mode.mu = es.eigenvalues()(j);
    const Eigen::VectorXd& x = es.eigenvectors().col(j);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Mesh::EdgeMesh& em = mesh.edges[static_cast<size_t>(e)];
      std::vector<double> vals(static_cast<size_t>(em.n) + 1, 0.0);
      int sd = mesh.vdof[static_cast<size_t>(g.edge(e).source)];
      int td = mesh.vdof[static_cast<size_t>(g.edge(e).target)];
      vals[0] = sd >= 0 ? x(sd) : 0.0;
      vals[static_cast<size_t>(em.n)] = td >= 0 ? x(td) : 0.0;
      for (int i = 1; i < em.n; ++i) vals[static_cast<size_t>(i)] = x(int_off[static_cast<size_t>(e)] + i - 1);
      mode.values.push_back(std::move(vals));
    }
    modes.push_back(std::move(mode));
  }
  return modes;
}

}  // namespace qgraph
