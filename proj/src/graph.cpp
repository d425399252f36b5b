#include "rspm/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "rspm/error.hpp"

namespace rspm {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex count");
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error(ErrorKind::InvalidArgument,
                  "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} out of range");
    if (e.u == e.v) throw Error(ErrorKind::InvalidArgument, "self-loop at " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error(ErrorKind::InvalidArgument, "duplicate edge");

  adjacency_.assign(static_cast<std::size_t>(n), {});
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const { return edge_index(u, v).has_value(); }

std::optional<std::size_t> Graph::edge_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  const Edge key{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : neighbors(x)) {
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n_;
}

WeightedGraph::WeightedGraph(Graph graph, std::vector<double> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  if (weights_.size() != graph_.edge_count())
    throw Error(ErrorKind::InvalidArgument, "weight count does not match edge count");
  for (double w : weights_)
    if (!(w >= 0.0) || std::isinf(w)) throw Error(ErrorKind::InvalidArgument, "edge weights must be finite and nonnegative");
}

Graph complete_graph(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "complete_graph needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph generate_erdos_renyi(int n, double p, Seed seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "generate_erdos_renyi needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must lie in [0,1]");
  Stream stream(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (stream.uniform() < p) edges.push_back({u, v});
  Graph g(n, std::move(edges));
  g.set_er_probability(p);
  return g;
}

WeightedGraph draw_weights(const Graph& graph, Seed seed) {
  Stream stream(seed);
  std::vector<double> weights(graph.edge_count());
  for (auto& w : weights) w = stream.exponential();
  return WeightedGraph(graph, std::move(weights));
}

namespace {

struct Ratio {
  std::int64_t cut;
  std::int64_t mu;
};

bool less(Ratio a, Ratio b) { return a.cut * b.mu < b.cut * a.mu; }

}  // namespace

CutParameters cut_parameters_exact(const Graph& graph, int cap) {
  const int n = graph.n();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "cut parameters need n >= 2");
  if (n > cap || n > 62)
    throw Error(ErrorKind::SizeCapExceeded, "n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (!graph.is_connected()) throw Error(ErrorKind::DisconnectedGraph, "cut parameters undefined (some cut is empty)");

  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& e : graph.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
    adj[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
  }

  // Gray-code walk over subsets of {1..n-1}; vertex 0 is always in U, so
  // each complementary pair {U, V\U} is visited once.
  std::uint64_t members = 1;
  std::int64_t cut = graph.degree(0);
  int size = 1;
  Ratio lo{cut, static_cast<std::int64_t>(n - 1)};
  Ratio hi = lo;
  const std::uint64_t steps = (std::uint64_t{1} << (n - 1)) - 1;
  for (std::uint64_t step = 1; step < steps + 1; ++step) {
    const int bit = std::countr_zero(step) + 1;
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const std::int64_t inside = std::popcount(adj[static_cast<std::size_t>(bit)] & members);
    const std::int64_t deg = graph.degree(bit);
    if (members & mask) {
      members &= ~mask;
      cut += 2 * inside - deg;
      --size;
    } else {
      cut += deg - 2 * inside;
      members |= mask;
      ++size;
    }
    if (size == n) continue;
    const Ratio r{cut, static_cast<std::int64_t>(size) * (n - size)};
    if (less(r, lo)) lo = r;
    if (less(hi, r)) hi = r;
  }

  CutParameters params;
  params.alpha_cut = lo.cut;
  params.alpha_mu = lo.mu;
  params.beta_cut = hi.cut;
  params.beta_mu = hi.mu;
  params.alpha = static_cast<double>(lo.cut) / static_cast<double>(lo.mu);
  params.beta = static_cast<double>(hi.cut) / static_cast<double>(hi.mu);
  return params;
}

double sum_lightest_edges(const WeightedGraph& wg, std::size_t m) {
  const auto weights = wg.weights();
  if (m > weights.size())
    throw Error(ErrorKind::NotEnoughEdges,
                "asked for " + std::to_string(m) + " of " + std::to_string(weights.size()) + " edges");
  std::vector<double> sorted(weights.begin(), weights.end());
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(m), sorted.end());
  return std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
}

std::int64_t cut_size(const Graph& graph, std::span<const bool> members) {
  std::int64_t cut = 0;
  for (const auto& e : graph.edges())
    if (members[static_cast<std::size_t>(e.u)] != members[static_cast<std::size_t>(e.v)]) ++cut;
  return cut;
}

}  // namespace rspm
