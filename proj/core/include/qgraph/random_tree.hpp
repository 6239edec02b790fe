#pragma once

#include <cstdint>
#include <random>

#include "qgraph/graph.hpp"

namespace qgraph {

/// Deterministic cross-platform randomness: the raw 64-bit stream is
/// std::mt19937_64 (whose output sequence is fixed by the standard); all
/// mappings to ranges are implemented here rather than with std::*_distribution,
/// whose results vary across standard libraries.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, n) by rejection sampling (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + uniform_real() * (hi - lo); }

  /// Standard normal via Box–Muller.
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform-attachment random tree: edge i (i = 1..n_edges) joins new vertex i
/// to a uniformly chosen existing vertex, with length uniform in [lo, hi].
/// Draw order per edge: parent first, then length. Fully determined by seed.
MetricGraph random_tree(std::uint64_t seed, int n_edges, double lo, double hi);

}  // namespace qgraph
