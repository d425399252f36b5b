#include "rspm/heuristics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "rspm/error.hpp"

namespace rspm {

namespace {

void require_finite(const Metric& metric, const char* op) {
  if (!metric.all_finite())
    throw Error(ErrorKind::InfiniteDistance, std::string(op) + " needs a connected metric");
}

void require_even(const Metric& metric) {
  if (metric.n() % 2 != 0)
    throw Error(ErrorKind::OddVertexCount, "perfect matching needs an even vertex count, got " + std::to_string(metric.n()));
}

void require_permutation(int n, std::span<const Vertex> order) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  if (order.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::InvalidArgument, "tour length differs from n");
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw Error(ErrorKind::InvalidArgument, "tour is not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

// Cheapest position to insert x into a closed tour; earliest position wins ties.
std::pair<std::size_t, double> best_insertion(const Metric& d, const std::vector<Vertex>& tour, Vertex x) {
  std::size_t best_pos = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < tour.size(); ++p) {
    const Vertex a = tour[p];
    const Vertex b = tour[(p + 1) % tour.size()];
    const double increase = d(a, x) + d(x, b) - d(a, b);
    if (increase < best) {
      best = increase;
      best_pos = p;
    }
  }
  return {best_pos, best};
}

}  // namespace

InsertionRule parse_insertion_rule(std::string_view name) {
  if (name == "nearest") return InsertionRule::Nearest;
  if (name == "farthest") return InsertionRule::Farthest;
  if (name == "cheapest") return InsertionRule::Cheapest;
  if (name == "random") return InsertionRule::Random;
  throw Error(ErrorKind::InvalidArgument, "unknown insertion rule '" + std::string(name) + "'");
}

std::string_view to_string(InsertionRule rule) {
  switch (rule) {
    case InsertionRule::Nearest: return "nearest";
    case InsertionRule::Farthest: return "farthest";
    case InsertionRule::Cheapest: return "cheapest";
    case InsertionRule::Random: return "random";
  }
  return "?";
}

double tour_cost(const Metric& metric, std::span<const Vertex> order) {
  if (order.size() < 2) return 0.0;
  double cost = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) cost += metric(order[i], order[(i + 1) % order.size()]);
  return cost;
}

double matching_cost(const Metric& metric, std::span<const std::pair<Vertex, Vertex>> pairs) {
  double cost = 0.0;
  for (const auto& [a, b] : pairs) cost += metric(a, b);
  return cost;
}

double kmedian_cost(const Metric& metric, std::span<const Vertex> centers) {
  double cost = 0.0;
  for (Vertex v = 0; v < metric.n(); ++v) {
    double nearest = kInfinity;
    for (Vertex c : centers) nearest = std::min(nearest, metric(v, c));
    cost += nearest;
  }
  return cost;
}

Matching greedy_matching(const Metric& metric) {
  require_even(metric);
  require_finite(metric, "greedy_matching");
  const int n = metric.n();
  std::vector<std::tuple<double, Vertex, Vertex>> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) candidates.emplace_back(metric(u, v), u, v);
  std::sort(candidates.begin(), candidates.end());

  Matching m;
  std::vector<char> matched(static_cast<std::size_t>(n), 0);
  for (const auto& [d, u, v] : candidates) {
    if (matched[static_cast<std::size_t>(u)] || matched[static_cast<std::size_t>(v)]) continue;
    matched[static_cast<std::size_t>(u)] = matched[static_cast<std::size_t>(v)] = 1;
    m.pairs.emplace_back(u, v);
    if (m.pairs.size() * 2 == static_cast<std::size_t>(n)) break;
  }
  m.cost = matching_cost(metric, m.pairs);
  return m;
}

Matching exact_matching(const Metric& metric, int cap) {
  require_even(metric);
  const int n = metric.n();
  if (n > cap || n > 30) throw Error(ErrorKind::SizeCapExceeded, "exact matching capped at n=" + std::to_string(cap));
  require_finite(metric, "exact_matching");

  // best[mask]: cheapest perfect matching of the vertex set `mask`, built by
  // pairing the lowest vertex of mask with some other member.
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<double> best(full + 1, kInfinity);
  std::vector<std::int8_t> partner(full + 1, -1);
  best[0] = 0.0;
  for (std::size_t mask = 3; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int low = std::countr_zero(mask);
    const std::size_t rest = mask & ~(std::size_t{1} << low);
    for (int j = low + 1; j < n; ++j) {
      if (!(rest >> j & 1U)) continue;
      const double c = best[rest & ~(std::size_t{1} << j)] + metric(low, j);
      if (c < best[mask]) {
        best[mask] = c;
        partner[mask] = static_cast<std::int8_t>(j);
      }
    }
  }

  Matching m;
  for (std::size_t mask = full; mask != 0;) {
    const int low = std::countr_zero(mask);
    const int j = partner[mask];
    m.pairs.emplace_back(low, j);
    mask &= ~((std::size_t{1} << low) | (std::size_t{1} << j));
  }
  m.cost = matching_cost(metric, m.pairs);
  return m;
}

Tour nearest_neighbor_tour(const Metric& metric, Vertex start) {
  const int n = metric.n();
  if (start < 0 || start >= n) throw Error(ErrorKind::InvalidArgument, "start vertex out of range");
  require_finite(metric, "nearest_neighbor_tour");
  Tour tour;
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  Vertex current = start;
  visited[static_cast<std::size_t>(start)] = 1;
  tour.order.push_back(start);
  for (int step = 1; step < n; ++step) {
    Vertex next = -1;
    for (Vertex x = 0; x < n; ++x) {
      if (visited[static_cast<std::size_t>(x)]) continue;
      if (next < 0 || metric(current, x) < metric(current, next)) next = x;
    }
    visited[static_cast<std::size_t>(next)] = 1;
    tour.order.push_back(next);
    current = next;
  }
  tour.cost = tour_cost(metric, tour.order);
  return tour;
}

Tour insertion_tour(const Metric& metric, InsertionRule rule, Seed seed) {
  const int n = metric.n();
  if (n < 3) throw Error(ErrorKind::TooFewVertices, "insertion needs n >= 3");
  require_finite(metric, "insertion_tour");
  const auto un = static_cast<std::size_t>(n);
  Stream stream(seed);

  std::vector<char> in_tour(un, 0);
  // Distance from each vertex to the closest tour vertex.
  std::vector<double> to_tour(un, kInfinity);
  std::vector<Vertex> tour;
  auto add = [&](Vertex x, std::size_t after) {
    if (tour.empty()) {
      tour.push_back(x);
    } else {
      tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(after + 1), x);
    }
    in_tour[static_cast<std::size_t>(x)] = 1;
    for (Vertex y = 0; y < n; ++y) to_tour[static_cast<std::size_t>(y)] = std::min(to_tour[static_cast<std::size_t>(y)], metric(x, y));
  };
  auto unvisited = [&] {
    std::vector<Vertex> out;
    for (Vertex x = 0; x < n; ++x)
      if (!in_tour[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
  };

  auto select = [&]() -> Vertex {
    const auto candidates = unvisited();
    Vertex chosen = candidates.front();
    switch (rule) {
      case InsertionRule::Nearest:
        for (Vertex x : candidates)
          if (to_tour[static_cast<std::size_t>(x)] < to_tour[static_cast<std::size_t>(chosen)]) chosen = x;
        break;
      case InsertionRule::Farthest:
        for (Vertex x : candidates)
          if (to_tour[static_cast<std::size_t>(x)] > to_tour[static_cast<std::size_t>(chosen)]) chosen = x;
        break;
      case InsertionRule::Cheapest: {
        double best = kInfinity;
        for (Vertex x : candidates) {
          const double c = best_insertion(metric, tour, x).second;
          if (c < best) {
            best = c;
            chosen = x;
          }
        }
        break;
      }
      case InsertionRule::Random:
        chosen = candidates[stream.below(candidates.size())];
        break;
    }
    return chosen;
  };

  // Seed tour: three vertices picked by the rule itself. Every closed tour
  // on three vertices is optimal.
  if (rule == InsertionRule::Cheapest) {
    double best = kInfinity;
    Vertex ba = 0, bb = 1, bc = 2;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        for (Vertex c = b + 1; c < n; ++c) {
          const double perimeter = metric(a, b) + metric(b, c) + metric(a, c);
          if (perimeter < best) {
            best = perimeter;
            std::tie(ba, bb, bc) = std::tie(a, b, c);
          }
        }
    add(ba, 0);
    add(bb, 0);
    add(bc, 1);
  } else {
    add(rule == InsertionRule::Random ? static_cast<Vertex>(stream.below(un)) : 0, 0);
    add(select(), 0);
    add(select(), 1);
  }

  while (tour.size() < un) {
    const Vertex x = select();
    add(x, best_insertion(metric, tour, x).first);
  }
  return Tour{tour, tour_cost(metric, tour)};
}

namespace {

double exchange_gain(const Metric& d, const std::vector<Vertex>& o, std::size_t i, std::size_t j) {
  const std::size_t n = o.size();
  const Vertex a = o[i], b = o[i + 1], c = o[j], e = o[(j + 1) % n];
  return d(a, b) + d(c, e) - d(a, c) - d(b, e);
}

// Valid exchanges (i, j): edges (o[i],o[i+1]) and (o[j],o[j+1]) are disjoint.
std::vector<std::pair<std::size_t, std::size_t>> exchange_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 2 < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j)
      if (!(i == 0 && j == n - 1)) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace

TwoOptTrace two_opt(const Metric& metric, const Tour& initial, PivotRule pivot) {
  const int n = metric.n();
  require_permutation(n, initial.order);
  require_finite(metric, "two_opt");

  TwoOptTrace trace;
  std::vector<Vertex> order = initial.order;
  trace.costs.push_back(tour_cost(metric, order));
  const auto pairs = exchange_pairs(order.size());
  auto apply = [&](std::size_t i, std::size_t j) {
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i + 1), order.begin() + static_cast<std::ptrdiff_t>(j + 1));
    ++trace.iterations;
    trace.costs.push_back(tour_cost(metric, order));
  };

  if (!pairs.empty()) {
    if (pivot == PivotRule::FirstImprovement) {
      // Resume scanning after the last applied exchange; stop once a full
      // cycle of candidates yields nothing.
      std::size_t idx = 0;
      std::size_t idle = 0;
      while (idle < pairs.size()) {
        const auto [i, j] = pairs[idx];
        if (exchange_gain(metric, order, i, j) > kTwoOptEpsilon) {
          apply(i, j);
          idle = 0;
        } else {
          ++idle;
        }
        idx = (idx + 1) % pairs.size();
      }
    } else {
      for (;;) {
        double best = kTwoOptEpsilon;
        std::size_t best_idx = pairs.size();
        for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
          const double g = exchange_gain(metric, order, pairs[idx].first, pairs[idx].second);
          if (g > best) {
            best = g;
            best_idx = idx;
          }
        }
        if (best_idx == pairs.size()) break;
        apply(pairs[best_idx].first, pairs[best_idx].second);
      }
    }
  }
  trace.final = Tour{order, trace.costs.back()};
  return trace;
}

bool is_two_opt_local_optimum(const Metric& metric, std::span<const Vertex> order) {
  const std::vector<Vertex> o(order.begin(), order.end());
  for (const auto& [i, j] : exchange_pairs(o.size()))
    if (exchange_gain(metric, o, i, j) > kTwoOptEpsilon) return false;
  return true;
}

Tour exact_tsp(const Metric& metric, int cap) {
  const int n = metric.n();
  if (n < 3) throw Error(ErrorKind::TooFewVertices, "exact_tsp needs n >= 3");
  if (n > cap || n > 25) throw Error(ErrorKind::SizeCapExceeded, "exact_tsp capped at n=" + std::to_string(cap));
  require_finite(metric, "exact_tsp");

  // Vertex 0 is the fixed start; bit b of a mask stands for vertex b+1.
  const int m = n - 1;
  const std::size_t states = std::size_t{1} << m;
  const auto um = static_cast<std::size_t>(m);
  std::vector<double> cost(states * um, kInfinity);
  std::vector<std::int8_t> prev(states * um, -1);
  for (int j = 0; j < m; ++j) cost[(std::size_t{1} << j) * um + static_cast<std::size_t>(j)] = metric(0, j + 1);

  for (std::size_t mask = 1; mask < states; ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1U)) continue;
      const double here = cost[mask * um + static_cast<std::size_t>(j)];
      if (std::isinf(here)) continue;
      for (int k = 0; k < m; ++k) {
        if (mask >> k & 1U) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double c = here + metric(j + 1, k + 1);
        double& slot = cost[next * um + static_cast<std::size_t>(k)];
        if (c < slot) {
          slot = c;
          prev[next * um + static_cast<std::size_t>(k)] = static_cast<std::int8_t>(j);
        }
      }
    }
  }

  const std::size_t full = states - 1;
  int last = 0;
  double best = kInfinity;
  for (int j = 0; j < m; ++j) {
    const double c = cost[full * um + static_cast<std::size_t>(j)] + metric(j + 1, 0);
    if (c < best) {
      best = c;
      last = j;
    }
  }

  std::vector<Vertex> reversed;
  std::size_t mask = full;
  for (int j = last; j >= 0;) {
    reversed.push_back(j + 1);
    const int p = prev[mask * um + static_cast<std::size_t>(j)];
    mask &= ~(std::size_t{1} << j);
    j = p;
  }
  Tour tour;
  tour.order.push_back(0);
  tour.order.insert(tour.order.end(), reversed.rbegin(), reversed.rend());
  tour.cost = tour_cost(metric, tour.order);
  return tour;
}

MedianSolution trivial_kmedian(const Metric& metric, std::span<const Vertex> centers) {
  if (centers.empty()) throw Error(ErrorKind::EmptyCenterSet, "k-median needs at least one center");
  for (Vertex c : centers)
    if (c < 0 || c >= metric.n()) throw Error(ErrorKind::InvalidArgument, "center out of range");
  require_finite(metric, "trivial_kmedian");
  MedianSolution s;
  s.centers.assign(centers.begin(), centers.end());
  std::sort(s.centers.begin(), s.centers.end());
  s.centers.erase(std::unique(s.centers.begin(), s.centers.end()), s.centers.end());
  s.cost = kmedian_cost(metric, s.centers);
  return s;
}

MedianSolution trivial_kmedian(const Metric& metric, int k) {
  if (k < 1 || k > metric.n()) throw Error(ErrorKind::InvalidArgument, "k must lie in [1, n]");
  std::vector<Vertex> centers(static_cast<std::size_t>(k));
  std::iota(centers.begin(), centers.end(), 0);
  return trivial_kmedian(metric, centers);
}

MedianSolution exact_kmedian(const Metric& metric, int k, double subset_cap) {
  const int n = metric.n();
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "k must lie in [1, n]");
  double subsets = 1.0;
  for (int i = 0; i < k; ++i) subsets = subsets * (n - i) / (i + 1);
  if (subsets > subset_cap)
    throw Error(ErrorKind::SizeCapExceeded, "C(n,k) = " + std::to_string(subsets) + " exceeds subset cap");
  require_finite(metric, "exact_kmedian");

  std::vector<Vertex> combo(static_cast<std::size_t>(k));
  std::iota(combo.begin(), combo.end(), 0);
  MedianSolution best{combo, kmedian_cost(metric, combo)};
  for (;;) {
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    const double c = kmedian_cost(metric, combo);
    if (c < best.cost) best = MedianSolution{combo, c};
  }
  return best;
}

}  // namespace rspm
