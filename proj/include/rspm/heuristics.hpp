#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rspm/metric.hpp"
#include "rspm/random.hpp"

namespace rspm {

struct Matching {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  double cost = 0.0;
};

struct Tour {
  std::vector<Vertex> order;
  double cost = 0.0;
};

struct TwoOptTrace {
  Tour final;
  long long iterations = 0;
  // Tour cost before the first exchange and after every applied exchange.
  std::vector<double> costs;
};

struct MedianSolution {
  std::vector<Vertex> centers;
  double cost = 0.0;
};

enum class InsertionRule { Nearest, Farthest, Cheapest, Random };
enum class PivotRule { FirstImprovement, BestImprovement };

InsertionRule parse_insertion_rule(std::string_view name);
std::string_view to_string(InsertionRule rule);

inline constexpr int kExactMatchingCap = 20;
inline constexpr int kExactTspCap = 18;
inline constexpr double kExactKMedianSubsetCap = 1e6;
// An exchange counts as improving only if it saves more than this.
inline constexpr double kTwoOptEpsilon = 1e-12;

double tour_cost(const Metric& metric, std::span<const Vertex> order);
double matching_cost(const Metric& metric, std::span<const std::pair<Vertex, Vertex>> pairs);
double kmedian_cost(const Metric& metric, std::span<const Vertex> centers);

Matching greedy_matching(const Metric& metric);
// Bitmask dynamic program over vertex subsets.
Matching exact_matching(const Metric& metric, int cap = kExactMatchingCap);

Tour nearest_neighbor_tour(const Metric& metric, Vertex start = 0);
Tour insertion_tour(const Metric& metric, InsertionRule rule, Seed seed = Seed{});

TwoOptTrace two_opt(const Metric& metric, const Tour& initial, PivotRule pivot = PivotRule::FirstImprovement);
// True if no 2-exchange saves more than kTwoOptEpsilon.
bool is_two_opt_local_optimum(const Metric& metric, std::span<const Vertex> order);

// Held-Karp.
Tour exact_tsp(const Metric& metric, int cap = kExactTspCap);

MedianSolution trivial_kmedian(const Metric& metric, std::span<const Vertex> centers);
// The canonical trivial heuristic: the first k vertices.
MedianSolution trivial_kmedian(const Metric& metric, int k);
MedianSolution exact_kmedian(const Metric& metric, int k, double subset_cap = kExactKMedianSubsetCap);

}  // namespace rspm
