#pragma once

#include <stdexcept>

namespace qgraph {

/// Malformed input data: bad graph structure, out-of-range ids, invalid parameters.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation not defined for this kind of input (e.g. diameter of a cyclic graph).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The eigenvalue scan could not resolve the spectrum at the requested resolution.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qgraph
