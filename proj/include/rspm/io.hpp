#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rspm/graph.hpp"
#include "rspm/metric.hpp"

namespace rspm::io {

// Graph text format: "n m", then m lines "u v" with 1-based endpoints. The
// weighted variant carries a third column printed with 17 significant digits.
struct GraphFile {
  Graph graph;
  std::optional<std::vector<double>> weights;
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& graph);
void write_weighted_graph(std::ostream& out, const WeightedGraph& wg);

// "n", then n rows of n distances; "inf" for the infinity sentinel.
void write_metric(std::ostream& out, const Metric& metric);
Metric read_metric(std::istream& in);

// %.17g, with "inf" for infinity.
std::string format_real(double x);

}  // namespace rspm::io
