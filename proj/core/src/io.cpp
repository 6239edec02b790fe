#include "qgraph/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qgraph {

Json graph_to_json(const MetricGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Json jv;
    jv["id"] = v;
    if (g.label(v)) jv["label"] = *g.label(v);
    j["vertices"].push_back(jv);
  }
  j["edges"] = Json::array();
  for (const Edge& e : g.edges())
    j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"length", e.length}});
  Json dir = Json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.condition(v) == VertexCondition::Dirichlet) dir.push_back(v);
  if (!dir.empty()) j["dirichlet"] = dir;
  return j;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError("graph file: " + what); }

int as_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) bad(std::string("missing integer field \"") + key + "\"");
  return j[key].get<int>();
}

}  // namespace

MetricGraph graph_from_json(const Json& j) {
  if (!j.is_object()) bad("top level must be an object");
  if (!j.contains("vertices") || !j["vertices"].is_array()) bad("\"vertices\" array required");

  std::set<int> ids;
  std::map<VertexId, std::string> labels;
  for (const Json& jv : j["vertices"]) {
    if (!jv.is_object()) bad("vertex entries must be objects");
    int id = as_int(jv, "id");
    if (id < 0) bad("vertex ids must be nonnegative");
    if (!ids.insert(id).second) bad("duplicate vertex id");
    if (jv.contains("label")) {
      if (!jv["label"].is_string()) bad("vertex label must be a string");
      labels[id] = jv["label"].get<std::string>();
    }
  }
  int n = static_cast<int>(ids.size());
  if (n == 0) bad("at least one vertex required");
  if (*ids.rbegin() != n - 1) bad("vertex ids must form 0..n-1");

  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) bad("\"edges\" must be an array");
    for (const Json& je : j["edges"]) {
      if (!je.is_object()) bad("edge entries must be objects");
      Edge e;
      e.source = as_int(je, "source");
      e.target = as_int(je, "target");
      if (!je.contains("length") || !je["length"].is_number()) bad("edge needs a numeric \"length\"");
      e.length = je["length"].get<double>();
      edges.push_back(e);
    }
  }

  std::map<VertexId, VertexCondition> conds;
  if (j.contains("dirichlet")) {
    if (!j["dirichlet"].is_array()) bad("\"dirichlet\" must be an array of vertex ids");
    for (const Json& jd : j["dirichlet"]) {
      if (!jd.is_number_integer()) bad("\"dirichlet\" entries must be integers");
      conds[jd.get<int>()] = VertexCondition::Dirichlet;
    }
  }

  return build_graph(n, edges, conds, labels);
}

MetricGraph parse_graph(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("not valid JSON");
  return graph_from_json(j);
}

MetricGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const MetricGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file: " + path);
  out << graph_to_json(g).dump(2) << "\n";
}

}  // namespace qgraph
