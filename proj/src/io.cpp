#include "rspm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rspm/error.hpp"

namespace rspm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NotEnoughEdges: return "NotEnoughEdges";
    case ErrorKind::OddVertexCount: return "OddVertexCount";
    case ErrorKind::InfiniteDistance: return "InfiniteDistance";
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::EmptyCenterSet: return "EmptyCenterSet";
    case ErrorKind::NTooSmall: return "NTooSmall";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::EmptySelection: return "EmptySelection";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace io {

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

double parse_real(const std::string& token, int line) {
  if (token == "inf") return kInfinity;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size())
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + token + "'");
  return value;
}

}  // namespace

GraphFile read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorKind::ParseError, "empty graph file");
  long long n = 0, m = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 1 || m < 0) throw Error(ErrorKind::ParseError, "header must be 'n m' with n >= 1");
  }

  std::vector<Edge> edges;
  std::vector<double> weights;
  int columns = 0;
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw Error(ErrorKind::ParseError, "expected " + std::to_string(m) + " edge lines");
    std::istringstream row(line);
    std::vector<std::string> tokens;
    for (std::string t; row >> t;) tokens.push_back(t);
    if (tokens.size() != 2 && tokens.size() != 3)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'u v [w]'");
    if (columns == 0) columns = static_cast<int>(tokens.size());
    if (static_cast<int>(tokens.size()) != columns)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": mixed weighted and unweighted rows");
    const double u = parse_real(tokens[0], line_no);
    const double v = parse_real(tokens[1], line_no);
    if (u != std::floor(u) || v != std::floor(v) || u < 1 || v < 1 || u > static_cast<double>(n) || v > static_cast<double>(n))
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": endpoints must be in 1..n");
    edges.push_back({static_cast<Vertex>(u) - 1, static_cast<Vertex>(v) - 1});
    if (columns == 3) weights.push_back(parse_real(tokens[2], line_no));
  }

  GraphFile file;
  if (columns == 3) {
    // Graph() sorts its edges; carry each weight along with its edge.
    std::vector<std::pair<Edge, double>> tagged;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Edge e = edges[i];
      if (e.u > e.v) std::swap(e.u, e.v);
      tagged.emplace_back(e, weights[i]);
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> sorted;
    for (const auto& [e, w] : tagged) sorted.push_back(w);
    file.graph = Graph(static_cast<int>(n), std::move(edges));
    file.weights = std::move(sorted);
  } else {
    file.graph = Graph(static_cast<int>(n), std::move(edges));
  }
  return file;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.n() << ' ' << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_weighted_graph(std::ostream& out, const WeightedGraph& wg) {
  const auto& g = wg.graph();
  out << g.n() << ' ' << g.edge_count() << '\n';
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    out << edges[i].u + 1 << ' ' << edges[i].v + 1 << ' ' << format_real(wg.weight(i)) << '\n';
}

void write_metric(std::ostream& out, const Metric& metric) {
  out << metric.n() << '\n';
  for (Vertex u = 0; u < metric.n(); ++u) {
    const auto row = metric.row(u);
    for (std::size_t v = 0; v < row.size(); ++v) out << (v ? " " : "") << format_real(row[v]);
    out << '\n';
  }
}

Metric read_metric(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 0) throw Error(ErrorKind::ParseError, "metric header must be n");
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(n * n));
  for (long long i = 0; i < n * n; ++i) {
    std::string token;
    if (!(in >> token)) throw Error(ErrorKind::ParseError, "metric table truncated");
    table.push_back(parse_real(token, static_cast<int>(i / n) + 2));
  }
  return Metric(static_cast<int>(n), std::move(table));
}

}  // namespace io
}  // namespace rspm
