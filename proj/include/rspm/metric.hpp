#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rspm/graph.hpp"

namespace rspm {

// Distance between vertices in different components.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Absolute slack for metric-axiom checks on sums of O(n) unit-scale weights.
inline constexpr double kMetricTolerance = 1e-12;

// Symmetric all-pairs shortest-path table. Immutable once built.
class Metric {
 public:
  Metric() = default;
  // Takes ownership of a row-major n*n table.
  Metric(int n, std::vector<double> dist);

  int n() const { return n_; }
  double operator()(Vertex u, Vertex v) const {
    return dist_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)];
  }
  std::span<const double> row(Vertex u) const {
    return std::span<const double>(dist_).subspan(static_cast<std::size_t>(u) * static_cast<std::size_t>(n_),
                                                  static_cast<std::size_t>(n_));
  }
  bool all_finite() const;

 private:
  int n_ = 0;
  std::vector<double> dist_;
};

struct MetricAxiomReport {
  std::int64_t diagonal_violations = 0;
  std::int64_t symmetry_violations = 0;
  std::int64_t triangle_violations = 0;

  std::int64_t total() const { return diagonal_violations + symmetry_violations + triangle_violations; }
};

// Nearest-first ordering of the vertices around a center, with the birth
// process quantities. k is 1-based throughout: tau(1) == 0, chi(k) for k < n.
class TauProfile {
 public:
  TauProfile(Vertex center, std::vector<Vertex> order, std::vector<double> tau, std::vector<std::int64_t> chi)
      : center_(center), order_(std::move(order)), tau_(std::move(tau)), chi_(std::move(chi)) {}

  Vertex center() const { return center_; }
  int n() const { return static_cast<int>(tau_.size()); }
  // Distance to the k-th closest vertex, counting the center itself.
  double tau(int k) const { return tau_[static_cast<std::size_t>(k - 1)]; }
  // Size of the cut induced by the k closest vertices, 1 <= k <= n-1.
  std::int64_t chi(int k) const { return chi_[static_cast<std::size_t>(k - 1)]; }
  // The k-th closest vertex.
  Vertex kth(int k) const { return order_[static_cast<std::size_t>(k - 1)]; }

  std::span<const Vertex> order() const { return order_; }
  std::span<const double> taus() const { return tau_; }
  std::span<const std::int64_t> chis() const { return chi_; }

 private:
  Vertex center_;
  std::vector<Vertex> order_;
  std::vector<double> tau_;
  std::vector<std::int64_t> chi_;
};

struct Partition {
  double delta = 0.0;
  double s_delta = 1.0;
  std::vector<std::vector<Vertex>> clusters;
  std::vector<double> diameters;
  std::vector<bool> dense;
  // Members of the maximal independent set of the ball-intersection graph.
  std::vector<Vertex> centers;

  std::size_t size() const { return clusters.size(); }
};

// Label-setting single-source distances on the weighted graph.
std::vector<double> distances_from(const WeightedGraph& wg, Vertex source);

Metric build_metric(const WeightedGraph& wg);

TauProfile tau_profile(const Metric& metric, const Graph& graph, Vertex v);
// Same, from one row of distances; avoids an all-pairs build when only one
// center is needed.
TauProfile tau_profile(std::span<const double> dist_from_v, const Graph& graph, Vertex v);

// Ball of radius delta around v, ascending vertex order.
std::vector<Vertex> ball(const Metric& metric, Vertex v, double delta);

double diameter(const Metric& metric);

Partition cluster_partition(const Metric& metric, double delta, double alpha);

MetricAxiomReport check_metric_axioms(const Metric& metric, double tolerance = kMetricTolerance);

}  // namespace rspm
