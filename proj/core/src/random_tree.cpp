#include "qgraph/random_tree.hpp"

#include <cmath>
#include <limits>

namespace qgraph {

std::uint64_t DetRng::uniform_int(std::uint64_t n) {
  if (n == 0) throw ValidationError("uniform_int needs n >= 1");
  const std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t cut = umax - umax % n;  // last n·⌊2⁶⁴/n⌋ values are rejected
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= cut && cut != 0);
  return r % n;
}

double DetRng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform_real();  // in (0, 1]
  double u2 = uniform_real();
  double r = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = r * std::sin(2.0 * M_PI * u2);
  return r * std::cos(2.0 * M_PI * u2);
}

MetricGraph random_tree(std::uint64_t seed, int n_edges, double lo, double hi) {
  if (n_edges < 1) throw ValidationError("random_tree needs at least one edge");
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
    throw ValidationError("length range must satisfy 0 < lo <= hi");
  DetRng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n_edges));
  for (int i = 1; i <= n_edges; ++i) {
    auto parent = static_cast<VertexId>(rng.uniform_int(static_cast<std::uint64_t>(i)));
    double length = rng.uniform_real(lo, hi);
    edges.push_back({parent, i, length});
  }
  return build_graph(n_edges + 1, edges);
}

}  // namespace qgraph
