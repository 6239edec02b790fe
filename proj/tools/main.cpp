#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/experiments.hpp"
#include "qgraph/extrema.hpp"
#include "qgraph/fem.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/io.hpp"
#include "qgraph/spectral.hpp"

namespace {

using namespace qgraph;

Json graph_summary(const MetricGraph& g) {
  Json j;
  j["n_vertices"] = g.vertex_count();
  j["n_edges"] = g.edge_count();
  j["total_length"] = g.total_length();
  j["is_tree"] = is_tree(g);
  return j;
}

int cmd_solve(const std::string& path, double mu_max, int extrema_index, bool csv) {
  MetricGraph g = load_graph(path);
  std::vector<Eigenpair> pairs = find_eigenvalues(g, mu_max);
  if (csv) {
    std::string out = "index,mu,k,multiplicity\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out += std::to_string(i + 1);
      out += ',';
      out += format_double(pairs[i].mu);
      out += ',';
      out += format_double(pairs[i].k);
      out += ',';
      out += std::to_string(pairs[i].multiplicity);
      out += '\n';
    }
    std::cout << out;
    return 0;
  }
  Json j;
  j["graph"] = graph_summary(g);
  j["mu_max"] = mu_max;
  Json evs = Json::array();
  for (const auto& p : pairs) evs.push_back(eigenpair_to_json(p));
  j["eigenvalues"] = evs;
  if (extrema_index > 0) {
    if (static_cast<std::size_t>(extrema_index) > pairs.size())
      throw DomainError("solve: --extrema index exceeds the number of eigenvalues found");
    const Eigenpair& p = pairs[extrema_index - 1];
    j["extrema_index"] = extrema_index;
    j["extrema"] = extremum_report_to_json(global_extrema(g, p.basis.front(), p.k));
    j["nodal"] = nodal_report_to_json(nodal_domains(g, p.basis.front(), p.k));
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_repro(double epsilon) {
  ReproReport r = run_repro(epsilon);
  std::cout << repro_to_json(r).dump(2) << "\n";
  return r.all_pass ? 0 : 1;
}

int cmd_survey(int n, std::uint64_t seed, int max_edges, bool fixture, bool csv) {
  SurveyOptions opts;
  opts.include_fixture = fixture;
  SurveyResult r = run_survey(n, seed, max_edges, opts);
  if (csv)
    std::cout << survey_to_csv(r);
  else
    std::cout << survey_to_json(r).dump(2) << "\n";
  return r.all_pass ? 0 : 1;
}

int cmd_monotonicity(const std::string& path, int vertex, double length) {
  MetricGraph g = load_graph(path);
  MonotonicityReport r = run_monotonicity(g, vertex, length);
  std::cout << monotonicity_to_json(r).dump(2) << "\n";
  return r.weak_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric-graph Laplacian spectra, eigenfunction extrema, and experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qgraph 0.1.0");

  std::string graph_path;
  double mu_max = 50.0;
  int extrema_index = 0;
  bool csv = false;
  auto* solve = app.add_subcommand("solve", "eigenvalues of a graph file up to --mu-max");
  solve->add_option("--graph", graph_path, "graph JSON file")->required();
  solve->add_option("--mu-max", mu_max, "upper end of the eigenvalue window");
  solve->add_option("--extrema", extrema_index,
                    "also report extrema + nodal domains of the i-th eigenvalue (1-based)");
  solve->add_flag("--csv", csv, "emit a CSV eigenvalue table instead of JSON");

  double epsilon = 0.05;
  auto* repro = app.add_subcommand("repro", "star-path family reproduction at one epsilon");
  repro->add_option("--epsilon", epsilon, "arm-length parameter in [0, 0.25)");

  int n = 20;
  std::uint64_t seed = 12345;
  int max_edges = 12;
  bool fixture = false;
  bool survey_csv = false;
  auto* survey = app.add_subcommand("survey", "hot-spots check over random trees");
  survey->add_option("--n", n, "number of random trees");
  survey->add_option("--seed", seed, "master seed");
  survey->add_option("--max-edges", max_edges, "edge count is uniform in 1..max-edges");
  survey->add_flag("--fixture", fixture, "append the joined star-path graph (epsilon = 0.05)");
  survey->add_flag("--csv", survey_csv, "emit CSV rows instead of JSON");

  std::string mono_path;
  int mono_vertex = 0;
  double mono_length = 0.0;
  auto* mono = app.add_subcommand("monotonicity", "glue a pendant edge and compare mu_2");
  mono->add_option("--graph", mono_path, "graph JSON file")->required();
  mono->add_option("--vertex", mono_vertex, "vertex the pendant is glued at")->required();
  mono->add_option("--length", mono_length, "pendant length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(graph_path, mu_max, extrema_index, csv);
    if (repro->parsed()) return cmd_repro(epsilon);
    if (survey->parsed()) return cmd_survey(n, seed, max_edges, fixture, survey_csv);
    if (mono->parsed()) return cmd_monotonicity(mono_path, mono_vertex, mono_length);
  } catch (const qgraph::ResolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
