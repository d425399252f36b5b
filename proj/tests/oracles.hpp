#pragma once

// Brute-force reference implementations. They share no code paths with the
// library routines they check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "rspm/graph.hpp"
#include "rspm/metric.hpp"

namespace oracle {

struct Extremes {
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
};

// Every nonempty proper subset, cut counted edge by edge.
inline Extremes cut_ratios(const rspm::Graph& g) {
  const int n = g.n();
  Extremes out;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    long long cut = 0;
    for (const auto& e : g.edges())
      if (((mask >> e.u) & 1U) != ((mask >> e.v) & 1U)) ++cut;
    const long long size = std::popcount(mask);
    const double ratio = static_cast<double>(cut) / static_cast<double>(size * (n - size));
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

inline rspm::Metric line_metric(const std::vector<double>& positions) {
  const int n = static_cast<int>(positions.size());
  std::vector<double> table;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) table.push_back(std::abs(positions[static_cast<std::size_t>(u)] - positions[static_cast<std::size_t>(v)]));
  return rspm::Metric(n, std::move(table));
}

// Floyd-Warshall, a different algorithm from the library's label-setting one.
inline std::vector<double> floyd_warshall(const rspm::WeightedGraph& wg) {
  const auto n = static_cast<std::size_t>(wg.n());
  std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  const auto edges = wg.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto u = static_cast<std::size_t>(edges[i].u), v = static_cast<std::size_t>(edges[i].v);
    d[u * n + v] = d[v * n + u] = std::min(d[u * n + v], wg.weight(i));
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) d[u * n + v] = std::min(d[u * n + v], d[u * n + s] + d[s * n + v]);
  return d;
}

inline double min_perfect_matching(const rspm::Metric& m) {
  const int n = m.n();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(double)> recurse = [&](double acc) {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<std::size_t>(i)]) {
        first = i;
        break;
      }
    if (first < 0) {
      best = std::min(best, acc);
      return;
    }
    used[static_cast<std::size_t>(first)] = 1;
    for (int j = first + 1; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = 1;
      recurse(acc + m(first, j));
      used[static_cast<std::size_t>(j)] = 0;
    }
    used[static_cast<std::size_t>(first)] = 0;
  };
  recurse(0.0);
  return best;
}

inline double min_tour(const rspm::Metric& m) {
  const int n = m.n();
  std::vector<int> rest(static_cast<std::size_t>(n - 1));
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = m(0, rest.front()) + m(rest.back(), 0);
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) c += m(rest[i], rest[i + 1]);
    best = std::min(best, c);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

inline double min_kmedian(const rspm::Metric& m, int k) {
  const int n = m.n();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double c = 0.0;
    for (int v = 0; v < n; ++v) {
      double near = std::numeric_limits<double>::infinity();
      for (int u = 0; u < n; ++u)
        if (mask >> u & 1U) near = std::min(near, m(v, u));
      c += near;
    }
    best = std::min(best, c);
  }
  return best;
}

}  // namespace oracle
