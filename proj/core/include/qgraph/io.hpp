#pragma once

#include <string>

#include "json.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

// Key order is preserved in emitted documents so repeated runs are
// byte-identical.
using Json = nlohmann::ordered_json;

/// Graph file layout:
///   {"vertices": [{"id": 0, "label": "v_l"?}, ...],
///    "edges":    [{"source": 0, "target": 1, "length": 1.0}, ...],
///    "dirichlet": [3, 4]?}
/// Lengths round-trip bit-exactly (shortest round-trip decimal form).
Json graph_to_json(const MetricGraph& g);
MetricGraph graph_from_json(const Json& j);

/// Parses a graph document from text; throws ValidationError on malformed
/// JSON or structural problems.
MetricGraph parse_graph(const std::string& text);

MetricGraph load_graph(const std::string& path);
void save_graph(const MetricGraph& g, const std::string& path);

}  // namespace qgraph
