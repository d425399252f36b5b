// Command-line front end: instance generation, cut parameters, metrics,
// single heuristic runs, experiment suites and bound evaluation.

#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rspm/bounds.hpp"
#include "rspm/error.hpp"
#include "rspm/graph.hpp"
#include "rspm/heuristics.hpp"
#include "rspm/io.hpp"
#include "rspm/lab.hpp"
#include "rspm/metric.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

using rspm::io::format_real;

rspm::WeightedGraph load_weighted(const std::string& path, std::uint64_t seed) {
  auto file = rspm::io::read_graph_file(path);
  if (file.weights) return rspm::WeightedGraph(file.graph, *file.weights);
  return rspm::draw_weights(file.graph, rspm::Seed(seed).split("weights"));
}

void print_order(std::ostream& out, const std::vector<rspm::Vertex>& order) {
  for (std::size_t i = 0; i < order.size(); ++i) out << (i ? " " : "") << order[i] + 1;
  out << '\n';
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> params;
  std::istringstream list(text);
  for (std::string item; std::getline(list, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw rspm::Error(rspm::ErrorKind::InvalidArgument, "expected k=v, got '" + item + "'");
    std::size_t used = 0;
    const std::string value = item.substr(eq + 1);
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty())
      throw rspm::Error(rspm::ErrorKind::InvalidArgument, "bad number in '" + item + "'");
    params[item.substr(0, eq)] = x;
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random shortest path metric laboratory"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a complete or G(n,p) graph");
  std::string gen_model = "complete";
  int gen_n = 0;
  double gen_p = 1.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  bool gen_weighted = false;
  gen->add_option("--model", gen_model, "complete or er")->check(CLI::IsMember({"complete", "er"}));
  gen->add_option("--n", gen_n, "Vertex count")->required();
  gen->add_option("--p", gen_p, "Edge probability (er)");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->add_flag("--weighted", gen_weighted, "Also draw Exp(1) weights and write them as a third column");

  // cutparams
  auto* cut = app.add_subcommand("cutparams", "Exact cut parameters of a graph");
  std::string cut_graph;
  int cut_cap = rspm::kDefaultCutParameterCap;
  cut->add_option("--graph", cut_graph, "Graph file")->required();
  cut->add_option("--cap", cut_cap, "Largest n to enumerate");

  // metric
  auto* met = app.add_subcommand("metric", "Build the shortest-path metric");
  std::string met_graph, met_export;
  std::uint64_t met_seed = 1;
  met->add_option("--graph", met_graph, "Graph file (weights drawn from --seed unless present)")->required();
  met->add_option("--seed", met_seed, "Weight seed");
  met->add_option("--export", met_export, "Write the distance table here");

  // heur
  auto* heur = app.add_subcommand("heur", "Run one heuristic (and its exact baseline when within caps)");
  std::string heur_name, heur_graph, heur_rule = "nearest", heur_pivot = "first";
  std::uint64_t heur_seed = 1;
  int heur_k = 1;
  int heur_start = 1;
  heur->add_option("heuristic", heur_name, "greedy-matching|nn|insertion|two-opt|kmedian")
      ->required()
      ->check(CLI::IsMember({"greedy-matching", "nn", "insertion", "two-opt", "kmedian"}));
  heur->add_option("--graph", heur_graph, "Graph file")->required();
  heur->add_option("--seed", heur_seed, "Weight seed");
  heur->add_option("--rule", heur_rule, "Insertion rule")->check(CLI::IsMember({"nearest", "farthest", "cheapest", "random"}));
  heur->add_option("--k", heur_k, "Number of medians");
  heur->add_option("--start", heur_start, "Start vertex (1-based) for nn");
  heur->add_option("--pivot", heur_pivot, "2-opt pivot rule")->check(CLI::IsMember({"first", "best"}));

  // suite
  auto* suite = app.add_subcommand("suite", "Run an experiment suite");
  std::string suite_name, suite_config, suite_format, suite_out;
  int suite_threads = -1;
  suite->add_option("name", suite_name, "tau|ratio|two-opt|concentration|structure|cdf")
      ->required()
      ->check(CLI::IsMember({"tau", "ratio", "two-opt", "concentration", "structure", "cdf"}));
  suite->add_option("--config", suite_config, "key=value config file")->required();
  suite->add_option("--format", suite_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  suite->add_option("--out", suite_out, "Output file (default: config 'output' or stdout)");
  suite->add_option("--threads", suite_threads, "Worker threads (0 = hardware)");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  auto* eval = bnd->add_subcommand("eval", "Evaluate one formula");
  bnd->require_subcommand(1);
  std::string formula, params_text;
  eval->add_option("formula", formula, "Formula id")->required();
  eval->add_option("--params", params_text, "k=v,... parameter list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      const rspm::Seed seed(gen_seed);
      const rspm::Graph g = gen_model == "er" ? rspm::generate_erdos_renyi(gen_n, gen_p, seed.split("graph"))
                                              : rspm::complete_graph(gen_n);
      std::ofstream file;
      if (!gen_out.empty()) {
        file.open(gen_out);
        if (!file) throw rspm::Error(rspm::ErrorKind::InvalidArgument, "cannot write '" + gen_out + "'");
      }
      std::ostream& out = gen_out.empty() ? std::cout : file;
      if (gen_weighted) {
        rspm::io::write_weighted_graph(out, rspm::draw_weights(g, seed.split("weights")));
      } else {
        rspm::io::write_graph(out, g);
      }
      return kExitPass;
    }

    if (*cut) {
      const auto file = rspm::io::read_graph_file(cut_graph);
      const auto params = rspm::cut_parameters_exact(file.graph, cut_cap);
      std::cout << "alpha " << format_real(params.alpha) << " (" << params.alpha_cut << "/" << params.alpha_mu << ")\n"
                << "beta " << format_real(params.beta) << " (" << params.beta_cut << "/" << params.beta_mu << ")\n";
      return kExitPass;
    }

    if (*met) {
      const auto wg = load_weighted(met_graph, met_seed);
      const auto metric = rspm::build_metric(wg);
      std::cout << "n " << metric.n() << "\nconnected " << (wg.graph().is_connected() ? 1 : 0) << "\ndiameter "
                << format_real(rspm::diameter(metric)) << '\n';
      if (!met_export.empty()) {
        std::ofstream out(met_export);
        if (!out) throw rspm::Error(rspm::ErrorKind::InvalidArgument, "cannot write '" + met_export + "'");
        rspm::io::write_metric(out, metric);
      }
      return kExitPass;
    }

    if (*heur) {
      const auto wg = load_weighted(heur_graph, heur_seed);
      const auto m = rspm::build_metric(wg);
      const int n = m.n();
      if (heur_name == "greedy-matching") {
        const auto gr = rspm::greedy_matching(m);
        std::cout << "GR " << format_real(gr.cost) << '\n';
        for (const auto& [a, b] : gr.pairs) std::cout << a + 1 << ' ' << b + 1 << '\n';
        if (n <= rspm::kExactMatchingCap)
          std::cout << "MM " << format_real(rspm::exact_matching(m).cost) << '\n';
      } else if (heur_name == "nn" || heur_name == "insertion" || heur_name == "two-opt") {
        rspm::Tour tour;
        std::string label;
        if (heur_name == "nn") {
          tour = rspm::nearest_neighbor_tour(m, heur_start - 1);
          label = "NN";
        } else if (heur_name == "insertion") {
          const auto rule = rspm::parse_insertion_rule(heur_rule);
          tour = rspm::insertion_tour(m, rule, rspm::Seed(heur_seed).split("insertion"));
          label = "IN_" + heur_rule;
        } else {
          rspm::Tour identity;
          identity.order.resize(static_cast<std::size_t>(n));
          std::iota(identity.order.begin(), identity.order.end(), 0);
          const auto trace = rspm::two_opt(
              m, identity, heur_pivot == "best" ? rspm::PivotRule::BestImprovement : rspm::PivotRule::FirstImprovement);
          tour = trace.final;
          label = "2OPT";
          std::cout << "T " << trace.iterations << '\n';
        }
        std::cout << label << ' ' << format_real(tour.cost) << '\n';
        print_order(std::cout, tour.order);
        if (n >= 3 && n <= rspm::kExactTspCap) std::cout << "TSP " << format_real(rspm::exact_tsp(m).cost) << '\n';
      } else {
        const auto tr = rspm::trivial_kmedian(m, heur_k);
        std::cout << "TR " << format_real(tr.cost) << '\n';
        print_order(std::cout, tr.centers);
        try {
          const auto me = rspm::exact_kmedian(m, heur_k);
          std::cout << "ME " << format_real(me.cost) << '\n';
          print_order(std::cout, me.centers);
        } catch (const rspm::Error& e) {
          if (e.kind() != rspm::ErrorKind::SizeCapExceeded) throw;
        }
      }
      return kExitPass;
    }

    if (*suite) {
      auto config = rspm::lab::parse_config_file(suite_config);
      config.suite = rspm::lab::parse_suite(suite_name);
      if (suite_format == "json") config.format = rspm::lab::OutputFormat::Json;
      if (suite_format == "csv") config.format = rspm::lab::OutputFormat::Csv;
      if (suite_threads >= 0) config.threads = suite_threads;
      if (!suite_out.empty()) config.output = suite_out;
      rspm::lab::validate(config);

      const auto report = rspm::lab::run_suite(config);
      const std::string text = rspm::lab::render(report, config.format);
      if (config.output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(config.output);
        if (!out) throw rspm::Error(rspm::ErrorKind::InvalidArgument, "cannot write '" + config.output + "'");
        out << text;
      }
      for (const auto& c : report.checks)
        if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
      for (const auto& [name, count] : report.violations)
        if (count != 0) std::cerr << "VIOLATION " << name << ": " << count << '\n';
      return report.passed() ? kExitPass : kExitViolation;
    }

    if (*eval) {
      const auto value = rspm::bounds::evaluate(formula, parse_params(params_text));
      std::cout << format_real(value.value);
      if (value.has_second) std::cout << ' ' << format_real(value.second);
      std::cout << '\n';
      if (value.clamped) std::cerr << "note: " << formula << " exceeded 1 and was clamped\n";
      return kExitPass;
    }
  } catch (const rspm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
