#include "rspm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "rspm/error.hpp"

namespace rspm {

Metric::Metric(int n, std::vector<double> dist) : n_(n), dist_(std::move(dist)) {
  if (n < 0 || dist_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw Error(ErrorKind::InvalidArgument, "distance table must be n*n");
}

bool Metric::all_finite() const {
  return std::all_of(dist_.begin(), dist_.end(), [](double d) { return std::isfinite(d); });
}

std::vector<double> distances_from(const WeightedGraph& wg, Vertex source) {
  const Graph& g = wg.graph();
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<double> dist(n, kInfinity);
  std::vector<char> settled(n, 0);

  // Weighted adjacency is rebuilt per call; edge_index lookups would cost a
  // binary search per relaxation.
  std::vector<std::vector<std::pair<Vertex, double>>> adj(n);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[static_cast<std::size_t>(edges[i].u)].emplace_back(edges[i].v, wg.weight(i));
    adj[static_cast<std::size_t>(edges[i].v)].emplace_back(edges[i].u, wg.weight(i));
  }

  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(x)]) continue;
    settled[static_cast<std::size_t>(x)] = 1;
    for (const auto& [y, w] : adj[static_cast<std::size_t>(x)]) {
      const double candidate = d + w;
      if (candidate < dist[static_cast<std::size_t>(y)]) {
        dist[static_cast<std::size_t>(y)] = candidate;
        heap.emplace(candidate, y);
      }
    }
  }
  return dist;
}

Metric build_metric(const WeightedGraph& wg) {
  const int n = wg.n();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> table(un * un, kInfinity);
  for (Vertex s = 0; s < n; ++s) {
    const auto row = distances_from(wg, s);
    std::copy(row.begin(), row.end(), table.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(s) * un));
  }
  // The two directions of a path may round differently; keep the lower
  // source's value so the table is exactly symmetric.
  for (std::size_t u = 0; u < un; ++u)
    for (std::size_t v = u + 1; v < un; ++v) table[v * un + u] = table[u * un + v];
  return Metric(n, std::move(table));
}

TauProfile tau_profile(std::span<const double> dist_from_v, const Graph& graph, Vertex v) {
  const int n = graph.n();
  if (v < 0 || v >= n) throw Error(ErrorKind::InvalidArgument, "center out of range");
  if (dist_from_v.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::InvalidArgument, "distance row does not match graph");

  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    const double da = dist_from_v[static_cast<std::size_t>(a)];
    const double db = dist_from_v[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    if ((a == v) != (b == v)) return a == v;
    return a < b;
  });

  std::vector<double> tau(static_cast<std::size_t>(n));
  std::vector<std::int64_t> chi(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  std::vector<char> inside(static_cast<std::size_t>(n), 0);
  std::int64_t cut = 0;
  for (int k = 0; k < n; ++k) {
    const Vertex x = order[static_cast<std::size_t>(k)];
    tau[static_cast<std::size_t>(k)] = dist_from_v[static_cast<std::size_t>(x)];
    std::int64_t already = 0;
    for (Vertex y : graph.neighbors(x)) already += inside[static_cast<std::size_t>(y)];
    cut += graph.degree(x) - 2 * already;
    inside[static_cast<std::size_t>(x)] = 1;
    if (k < n - 1) chi[static_cast<std::size_t>(k)] = cut;
  }
  tau[0] = 0.0;
  return TauProfile(v, std::move(order), std::move(tau), std::move(chi));
}

TauProfile tau_profile(const Metric& metric, const Graph& graph, Vertex v) {
  if (metric.n() != graph.n()) throw Error(ErrorKind::InvalidArgument, "metric and graph sizes differ");
  if (v < 0 || v >= metric.n()) throw Error(ErrorKind::InvalidArgument, "center out of range");
  return tau_profile(metric.row(v), graph, v);
}

std::vector<Vertex> ball(const Metric& metric, Vertex v, double delta) {
  if (v < 0 || v >= metric.n()) throw Error(ErrorKind::InvalidArgument, "center out of range");
  if (!(delta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  std::vector<Vertex> members;
  const auto row = metric.row(v);
  for (Vertex u = 0; u < metric.n(); ++u)
    if (u == v || row[static_cast<std::size_t>(u)] <= delta) members.push_back(u);
  return members;
}

double diameter(const Metric& metric) {
  double best = 0.0;
  for (Vertex u = 0; u < metric.n(); ++u)
    for (double d : metric.row(u)) best = std::max(best, d);
  return best;
}

Partition cluster_partition(const Metric& metric, double delta, double alpha) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be nonnegative");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0,1]");
  const int n = metric.n();
  const auto un = static_cast<std::size_t>(n);

  Partition part;
  part.delta = delta;
  part.s_delta = std::min(std::exp(alpha * delta * n / 5.0), (n + 1) / 2.0);

  std::vector<std::vector<char>> in_ball(un, std::vector<char>(un, 0));
  part.dense.assign(un, false);
  for (Vertex v = 0; v < n; ++v) {
    const auto members = ball(metric, v, delta);
    for (Vertex u : members) in_ball[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    part.dense[static_cast<std::size_t>(v)] = static_cast<double>(members.size()) >= part.s_delta;
  }
  auto intersects = [&](Vertex a, Vertex b) {
    const auto& ba = in_ball[static_cast<std::size_t>(a)];
    const auto& bb = in_ball[static_cast<std::size_t>(b)];
    for (std::size_t x = 0; x < un; ++x)
      if (ba[x] && bb[x]) return true;
    return false;
  };

  // Greedy maximal independent set, by index, in the graph on dense vertices
  // whose edges join vertices with intersecting balls.
  for (Vertex v = 0; v < n; ++v) {
    if (!part.dense[static_cast<std::size_t>(v)]) continue;
    if (std::none_of(part.centers.begin(), part.centers.end(), [&](Vertex c) { return intersects(c, v); }))
      part.centers.push_back(v);
  }

  // cluster_of: -1 unassigned, otherwise index into centers.
  std::vector<int> cluster_of(un, -1);
  for (std::size_t c = 0; c < part.centers.size(); ++c) {
    const auto& members = in_ball[static_cast<std::size_t>(part.centers[c])];
    for (std::size_t x = 0; x < un; ++x)
      if (members[x] && part.dense[x]) cluster_of[x] = static_cast<int>(c);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!part.dense[static_cast<std::size_t>(v)] || cluster_of[static_cast<std::size_t>(v)] >= 0) continue;
    for (std::size_t c = 0; c < part.centers.size(); ++c) {
      if (intersects(part.centers[c], v)) {
        cluster_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
        break;
      }
    }
  }

  part.clusters.assign(part.centers.size(), {});
  for (Vertex v = 0; v < n; ++v) {
    const int c = cluster_of[static_cast<std::size_t>(v)];
    if (c >= 0) {
      part.clusters[static_cast<std::size_t>(c)].push_back(v);
    } else {
      part.clusters.push_back({v});
    }
  }
  std::sort(part.clusters.begin(), part.clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  for (const auto& cluster : part.clusters) {
    double diam = 0.0;
    for (Vertex a : cluster)
      for (Vertex b : cluster) diam = std::max(diam, metric(a, b));
    part.diameters.push_back(diam);
  }
  return part;
}

MetricAxiomReport check_metric_axioms(const Metric& metric, double tolerance) {
  MetricAxiomReport report;
  const int n = metric.n();
  for (Vertex u = 0; u < n; ++u) {
    if (metric(u, u) != 0.0) ++report.diagonal_violations;
    for (Vertex v = u + 1; v < n; ++v)
      if (metric(u, v) != metric(v, u)) ++report.symmetry_violations;
  }
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex u = 0; u < n; ++u) {
      const double us = metric(u, s);
      if (std::isinf(us)) continue;
      for (Vertex v = 0; v < n; ++v) {
        const double bound = us + metric(s, v);
        if (metric(u, v) > bound + tolerance) ++report.triangle_violations;
      }
    }
  }
  return report;
}

}  // namespace rspm
