#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rspm/random.hpp"

namespace rspm {

using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Edges are stored normalized
// (u < v) in lexicographic order; that order is also the order in which
// weights are drawn.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidArgument on self-loops, duplicates or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(Vertex u, Vertex v) const;
  // Index of edge {u,v} in edges(), if present.
  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;

  bool is_connected() const;

  // Edge probability the graph was sampled with, when it came from G(n,p).
  std::optional<double> er_probability() const { return er_probability_; }
  void set_er_probability(double p) { er_probability_ = p; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::optional<double> er_probability_;
};

class WeightedGraph {
 public:
  // weights[i] belongs to graph.edges()[i]; all weights must be nonnegative.
  WeightedGraph(Graph graph, std::vector<double> weights);

  const Graph& graph() const { return graph_; }
  int n() const { return graph_.n(); }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t edge_index) const { return weights_[edge_index]; }

 private:
  Graph graph_;
  std::vector<double> weights_;
};

// Exact cut parameters. The extremal ratios are also kept as integer
// fractions so callers can test cut-size inequalities without rounding.
struct CutParameters {
  double alpha = 1.0;
  double beta = 1.0;
  std::int64_t alpha_cut = 1;
  std::int64_t alpha_mu = 1;
  std::int64_t beta_cut = 1;
  std::int64_t beta_mu = 1;

  // alpha * mu <= cut, exactly.
  bool lower_holds(std::int64_t cut, std::int64_t mu) const { return cut * alpha_mu >= alpha_cut * mu; }
  // cut <= beta * mu, exactly.
  bool upper_holds(std::int64_t cut, std::int64_t mu) const { return cut * beta_mu <= beta_cut * mu; }
};

inline constexpr int kDefaultCutParameterCap = 24;

Graph complete_graph(int n);
Graph generate_erdos_renyi(int n, double p, Seed seed);
WeightedGraph draw_weights(const Graph& graph, Seed seed);

// Exhaustive over the 2^(n-1)-1 subsets containing vertex 0.
CutParameters cut_parameters_exact(const Graph& graph, int cap = kDefaultCutParameterCap);

// Sum of the m smallest edge weights.
double sum_lightest_edges(const WeightedGraph& wg, std::size_t m);

// Number of edges with exactly one endpoint in `members` (a membership mask).
std::int64_t cut_size(const Graph& graph, std::span<const bool> members);

}  // namespace rspm
