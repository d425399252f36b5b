#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rspm/bounds.hpp"
#include "rspm/error.hpp"
#include "rspm/io.hpp"
#include "rspm/lab.hpp"
#include "rspm/metric.hpp"

namespace rspm::lab {

namespace {

// Ratios may dip below 1 only by rounding.
constexpr double kRatioSlack = 1e-12;

// Graph source for per-trial instances; an imported graph is read once.
class InstanceSource {
 public:
  explicit InstanceSource(const ExperimentConfig& config) : config_(config) {
    if (config.model == GraphModel::Imported) imported_ = frozen_graph(config);
  }

  Graph graph(Seed child) const { return config_.model == GraphModel::Imported ? imported_ : trial_graph(config_, child); }

 private:
  const ExperimentConfig& config_;
  Graph imported_;
};

std::string fmt(double x) { return io::format_real(x); }

void add_summary(Report& report, const std::string& statistic) {
  std::vector<double> values;
  for (const auto& r : report.records)
    if (const double* v = r.find(statistic)) values.push_back(*v);
  if (!values.empty()) report.summaries.push_back(summarize(values, statistic));
}

long long sum_of(const Report& report, const std::string& statistic) {
  long long total = 0;
  for (const auto& r : report.records)
    if (const double* v = r.find(statistic)) total += static_cast<long long>(*v);
  return total;
}

void bracket_check(Report& report, const std::string& statistic, bounds::Bracket bracket) {
  const SummaryStats* s = report.summary(statistic);
  if (!s) return;
  Check c;
  c.name = statistic;
  c.passed = s->ci_intersects(bracket.lower, bracket.upper);
  c.detail = "bracket [" + fmt(bracket.lower) + ", " + fmt(bracket.upper) + "] vs 99% CI [" + fmt(s->ci_low) + ", " +
             fmt(s->ci_high) + "]";
  report.checks.push_back(std::move(c));
}

std::size_t count_eligible(const Report& report) {
  return static_cast<std::size_t>(std::count_if(report.records.begin(), report.records.end(),
                                                [](const TrialRecord& r) { return r.connected; }));
}

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson(double successes, double trials, double z) {
  const double phat = successes / trials;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / trials;
  const double center = (phat + z2 / (2.0 * trials)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

Report suite_tau_bounds(const ExperimentConfig& config) {
  const Graph g = frozen_graph(config);
  const int n = g.n();
  if (n < 2) throw Error(ErrorKind::ConfigInvalid, "tau suite needs n >= 2");
  if (config.vertex >= n) throw Error(ErrorKind::ConfigInvalid, "vertex out of range");
  const CutParameters cut = cut_parameters_for(config, g);
  const Vertex v = config.vertex;

  Report report;
  report.suite = "tau";
  report.records = run_trials(config, [&](Seed child, TrialRecord& r) {
    const WeightedGraph wg = draw_weights(g, child.split("weights"));
    const auto row = distances_from(wg, v);
    const TauProfile profile = tau_profile(row, g, v);

    Stream pick(child.split("pair"));
    Vertex u = static_cast<Vertex>(pick.below(static_cast<std::uint64_t>(n - 1)));
    if (u >= v) ++u;
    r.set("d_pair", row[static_cast<std::size_t>(u)]);

    // Increments of the birth process rescaled by their rate; each is Exp(1).
    double rescaled = 0.0;
    for (int k = 2; k <= n; ++k) rescaled += (profile.tau(k) - profile.tau(k - 1)) * static_cast<double>(profile.chi(k - 1));
    r.set("birth_rescaled", rescaled / (n - 1));
    for (int k = 1; k <= n; ++k) r.set("tau_" + std::to_string(k), profile.tau(k));
  });

  add_summary(report, "d_pair");
  add_summary(report, "birth_rescaled");
  for (int k = 1; k <= n; ++k) add_summary(report, "tau_" + std::to_string(k));

  bracket_check(report, "d_pair", bounds::pair_distance_bounds(n, cut.alpha, cut.beta));
  bracket_check(report, "birth_rescaled", {1.0, 1.0});
  for (int k = 1; k <= n; ++k)
    bracket_check(report, "tau_" + std::to_string(k), bounds::tau_expectation_bounds(n, k, cut.alpha, cut.beta));
  report.checks.push_back({"cut_parameters", true, "alpha=" + fmt(cut.alpha) + " beta=" + fmt(cut.beta)});
  return report;
}

Report suite_ratio(const ExperimentConfig& config) {
  const InstanceSource source(config);
  Report report;
  report.suite = "ratio";
  report.records = run_trials(config, [&](Seed child, TrialRecord& r) {
    const Graph g = source.graph(child);
    r.connected = g.is_connected();
    if (!r.connected) return;
    const Metric m = build_metric(draw_weights(g, child.split("weights")));
    double heuristic = 0.0;
    double exact = 0.0;
    switch (config.ratio_kind) {
      case RatioKind::Matching:
        heuristic = greedy_matching(m).cost;
        exact = exact_matching(m, config.caps.matching).cost;
        break;
      case RatioKind::NearestNeighbor:
        heuristic = nearest_neighbor_tour(m, 0).cost;
        exact = exact_tsp(m, config.caps.tsp).cost;
        break;
      case RatioKind::Insertion:
        heuristic = insertion_tour(m, config.rule, child.split("insertion")).cost;
        exact = exact_tsp(m, config.caps.tsp).cost;
        break;
      case RatioKind::KMedian:
        if (config.k >= m.n()) throw Error(ErrorKind::ConfigInvalid, "k-median ratio needs k <= n-1");
        heuristic = trivial_kmedian(m, config.k).cost;
        exact = exact_kmedian(m, config.k, config.caps.kmedian_subsets).cost;
        break;
    }
    const double ratio = heuristic / exact;
    r.set("heuristic", heuristic);
    r.set("exact", exact);
    r.set("ratio", ratio);
    r.set("ratio_violation", ratio < 1.0 - kRatioSlack ? 1.0 : 0.0);
  });

  add_summary(report, "heuristic");
  add_summary(report, "exact");
  add_summary(report, "ratio");
  const long long below_one = sum_of(report, "ratio_violation");
  report.violations.emplace_back("ratio_below_one", below_one);
  for (auto& s : report.summaries)
    if (s.name == "ratio") s.violations = below_one;
  report.checks.push_back({"eligible", true, std::to_string(count_eligible(report)) + " connected of " +
                                                 std::to_string(report.records.size())});
  return report;
}

Report suite_two_opt(const ExperimentConfig& config) {
  const InstanceSource source(config);
  Report report;
  report.suite = "two-opt";
  report.records = run_trials(config, [&](Seed child, TrialRecord& r) {
    const Graph g = source.graph(child);
    r.connected = g.is_connected();
    if (!r.connected) return;
    const int n = g.n();
    const Metric m = build_metric(draw_weights(g, child.split("weights")));

    Tour start;
    switch (config.two_opt_start) {
      case TwoOptStart::Identity:
        start.order.resize(static_cast<std::size_t>(n));
        std::iota(start.order.begin(), start.order.end(), 0);
        start.cost = tour_cost(m, start.order);
        break;
      case TwoOptStart::NearestNeighbor: start = nearest_neighbor_tour(m, 0); break;
      case TwoOptStart::Optimal: start = exact_tsp(m, config.caps.tsp); break;
    }
    const TwoOptTrace trace = two_opt(m, start, config.pivot);

    long long non_decreasing = 0;
    for (std::size_t i = 1; i < trace.costs.size(); ++i)
      if (!(trace.costs[i] < trace.costs[i - 1])) ++non_decreasing;
    const bool local_opt = is_two_opt_local_optimum(m, trace.final.order);

    // Trivial check against the n^8 ln^3(n) beta/alpha scale of the
    // expected-iteration bound; only meaningful when alpha, beta are known.
    double scale = std::pow(static_cast<double>(n), 8.0) * std::pow(std::log(static_cast<double>(n)), 3.0);
    if (n <= config.caps.cut_parameters) {
      const CutParameters cut = cut_parameters_exact(g, config.caps.cut_parameters);
      scale *= cut.beta / cut.alpha;
    }

    r.set("iterations", static_cast<double>(trace.iterations));
    r.set("initial_cost", trace.costs.front());
    r.set("final_cost", trace.final.cost);
    r.set("monotonicity_violations", static_cast<double>(non_decreasing));
    r.set("not_local_optimum", local_opt ? 0.0 : 1.0);
    r.set("iteration_scale", scale);
    r.set("above_scale", static_cast<double>(trace.iterations) > scale ? 1.0 : 0.0);
  });

  add_summary(report, "iterations");
  add_summary(report, "initial_cost");
  add_summary(report, "final_cost");
  report.violations.emplace_back("cost_not_strictly_decreasing", sum_of(report, "monotonicity_violations"));
  report.violations.emplace_back("not_local_optimum", sum_of(report, "not_local_optimum"));
  report.violations.emplace_back("iterations_above_scale", sum_of(report, "above_scale"));
  return report;
}

Report suite_concentration(const ExperimentConfig& config) {
  const InstanceSource source(config);
  Report report;
  report.suite = "concentration";
  const double p = config.model == GraphModel::Complete ? 1.0 : config.p;
  const double lo = (1.0 - config.epsilon) * p;
  const double hi = (1.0 + config.epsilon) * p;
  report.records = run_trials(config, [&](Seed child, TrialRecord& r) {
    const Graph g = source.graph(child);
    r.connected = g.n() >= 2 && g.is_connected();
    r.set("edges", static_cast<double>(g.edge_count()));
    if (!r.connected) return;
    const CutParameters cut = cut_parameters_exact(g, config.caps.cut_parameters);
    r.set("alpha", cut.alpha);
    r.set("beta", cut.beta);
    r.set("alpha_over_p", cut.alpha / p);
    r.set("beta_over_p", cut.beta / p);
    r.set("within", (lo <= cut.alpha && cut.beta <= hi) ? 1.0 : 0.0);
  });

  add_summary(report, "edges");
  add_summary(report, "alpha_over_p");
  add_summary(report, "beta_over_p");
  add_summary(report, "within");
  const std::size_t eligible = count_eligible(report);
  Check c{"within_band", true, ""};
  if (eligible == 0) {
    c.detail = "zero eligible trials";
  } else {
    const double fraction = report.summary("within")->mean;
    c.passed = fraction >= config.concentration_threshold;
    c.detail = "fraction " + fmt(fraction) + " of " + std::to_string(eligible) + " connected draws in [" + fmt(lo) +
               ", " + fmt(hi) + "], threshold " + fmt(config.concentration_threshold);
  }
  report.checks.push_back(std::move(c));
  return report;
}

Report suite_structure(const ExperimentConfig& config) {
  const InstanceSource source(config);
  Report report;
  report.suite = "structure";
  report.records = run_trials(config, [&](Seed child, TrialRecord& r) {
    const Graph g = source.graph(child);
    r.connected = g.is_connected();
    if (!r.connected) return;
    const int n = g.n();
    const CutParameters cut = cut_parameters_for(config, g);
    const WeightedGraph wg = draw_weights(g, child.split("weights"));
    const Metric m = build_metric(wg);
    r.set("alpha", cut.alpha);
    r.set("beta", cut.beta);
    r.set("metric_violations", static_cast<double>(check_metric_axioms(m).total()));

    // Cut sizes around every center against alpha k(n-k) and beta k(n-k).
    long long chi_violations = 0;
    double max_tau_n = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      const TauProfile profile = tau_profile(m, g, v);
      max_tau_n = std::max(max_tau_n, profile.tau(n));
      for (int k = 1; k < n; ++k) {
        const std::int64_t mu = static_cast<std::int64_t>(k) * (n - k);
        if (!cut.lower_holds(profile.chi(k), mu) || !cut.upper_holds(profile.chi(k), mu)) ++chi_violations;
      }
    }
    r.set("chi_violations", static_cast<double>(chi_violations));

    const double diam = diameter(m);
    r.set("diameter", diam);
    r.set("diameter_mismatch", diam == max_tau_n ? 0.0 : 1.0);

    long long cluster_violations = 0;
    for (std::size_t i = 0; i < config.delta_fractions.size(); ++i) {
      const double delta = config.delta_fractions[i] * diam;
      const Partition part = cluster_partition(m, delta, cut.alpha);
      for (double d : part.diameters)
        if (d > 4.0 * delta + kMetricTolerance) ++cluster_violations;
      std::vector<char> covered(static_cast<std::size_t>(n), 0);
      for (const auto& cluster : part.clusters)
        for (Vertex x : cluster) {
          if (covered[static_cast<std::size_t>(x)]) ++cluster_violations;
          covered[static_cast<std::size_t>(x)] = 1;
        }
      cluster_violations += std::count(covered.begin(), covered.end(), 0);
      const std::string tag = "_d" + std::to_string(i);
      r.set("clusters" + tag, static_cast<double>(part.size()));
      r.set("count_scale" + tag, bounds::cluster_scale(delta, n, cut.alpha).count_scale);
    }
    r.set("cluster_violations", static_cast<double>(cluster_violations));

    if (n % 2 == 0 && n >= 4 && n <= config.caps.tsp && n <= config.caps.matching) {
      const double tsp = exact_tsp(m, config.caps.tsp).cost;
      const double mm = exact_matching(m, config.caps.matching).cost;
      const double s_half = sum_lightest_edges(wg, static_cast<std::size_t>(n / 2));
      r.set("tsp", tsp);
      r.set("mm", mm);
      r.set("s_half", s_half);
      r.set("sandwich_violations",
            (tsp < mm - kMetricTolerance ? 1.0 : 0.0) + (mm < s_half - kMetricTolerance ? 1.0 : 0.0));
    }
  });

  for (std::size_t i = 0; i < config.delta_fractions.size(); ++i) {
    add_summary(report, "clusters_d" + std::to_string(i));
    add_summary(report, "count_scale_d" + std::to_string(i));
  }
  add_summary(report, "tsp");
  add_summary(report, "mm");
  add_summary(report, "s_half");
  report.violations.emplace_back("metric_axioms", sum_of(report, "metric_violations"));
  report.violations.emplace_back("chi_bounds", sum_of(report, "chi_violations"));
  report.violations.emplace_back("diameter_vs_tau_n", sum_of(report, "diameter_mismatch"));
  report.violations.emplace_back("cluster_4delta", sum_of(report, "cluster_violations"));
  report.violations.emplace_back("sandwich", sum_of(report, "sandwich_violations"));
  std::string grid;
  for (double f : config.delta_fractions) grid += (grid.empty() ? "" : ",") + fmt(f);
  report.checks.push_back({"eligible", true, std::to_string(count_eligible(report)) + " connected of " +
                                                 std::to_string(report.records.size()) + "; delta grid x diameter: " + grid});
  return report;
}

Report suite_cdf(const ExperimentConfig& config) {
  Report report;
  report.suite = "cdf";

  // (a) Sum of Exp(c i), i = 1..terms, against the closed form.
  {
    Stream stream(config.seed.split("cdf-sum"));
    std::vector<double> samples(static_cast<std::size_t>(config.cdf_samples));
    for (auto& s : samples) {
      s = 0.0;
      for (int i = 1; i <= config.cdf_terms; ++i) s += stream.exponential(config.cdf_rate * i);
    }
    std::sort(samples.begin(), samples.end());
    double sup = 0.0;
    const double total = static_cast<double>(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const double f = bounds::exp_sum_cdf(config.cdf_rate, config.cdf_terms, samples[j]);
      sup = std::max({sup, std::abs((static_cast<double>(j) + 1.0) / total - f), std::abs(static_cast<double>(j) / total - f)});
    }
    // Dvoretzky-Kiefer-Wolfowitz band at 99%.
    const double dkw = std::sqrt(std::log(2.0 / 0.01) / (2.0 * total));
    report.checks.push_back({"exp_sum_sup_diff", sup <= dkw,
                             "sup |F_emp - F| = " + fmt(sup) + " over " + std::to_string(samples.size()) +
                                 " samples, 99% DKW band " + fmt(dkw)});
    SummaryStats s;
    s.name = "exp_sum_sup_diff";
    s.count = samples.size();
    s.mean = s.ci_low = s.ci_high = s.min = s.max = sup;
    report.summaries.push_back(s);
  }

  // (b) Empirical CDF of tau_k(v) on a fixed graph against the bracket.
  const Graph g = frozen_graph(config);
  const int n = g.n();
  const int k = config.cdf_k == 0 ? n : config.cdf_k;
  if (k > n || config.vertex >= n) throw Error(ErrorKind::ConfigInvalid, "cdf_k or vertex out of range");
  const CutParameters cut = cut_parameters_for(config, g);
  const Vertex v = config.vertex;
  report.records = run_trials(config, [&](Seed child, TrialRecord& r) {
    const WeightedGraph wg = draw_weights(g, child.split("weights"));
    r.set("tau_k", tau_profile(distances_from(wg, v), g, v).tau(k));
  });
  add_summary(report, "tau_k");

  std::vector<double> taus;
  for (const auto& r : report.records) taus.push_back(*r.find("tau_k"));
  std::sort(taus.begin(), taus.end());
  const double trials = static_cast<double>(taus.size());
  const double top = std::max(taus.back(), 1e-12);
  int outside = 0;
  int halving_dominates = 0;
  for (int i = 0; i <= config.cdf_points; ++i) {
    const double x = top * static_cast<double>(i) / config.cdf_points;
    const double below = static_cast<double>(std::upper_bound(taus.begin(), taus.end(), x) - taus.begin());
    const auto [ci_lo, ci_hi] = wilson(below, trials, kZ99);
    const auto bracket = bounds::tau_cdf_bounds(x, n, k, cut.alpha, cut.beta);
    if (!(bracket.lower <= ci_hi && ci_lo <= bracket.upper)) ++outside;
    const double halving = std::pow(-std::expm1(-cut.alpha * n * x / 4.0), static_cast<double>(n));
    if (k > 1 && halving == bracket.lower && halving > 0.0) ++halving_dominates;
  }
  report.checks.push_back({"tau_cdf_bracket", outside == 0,
                           std::to_string(outside) + " of " + std::to_string(config.cdf_points + 1) +
                               " grid points outside the bracket (k=" + std::to_string(k) + "); the n-power lower bound is the larger lower bound at " +
                               std::to_string(halving_dominates) + " points"});
  return report;
}

Report run_suite(const ExperimentConfig& config) {
  switch (config.suite) {
    case Suite::Tau: return suite_tau_bounds(config);
    case Suite::Ratio: return suite_ratio(config);
    case Suite::TwoOpt: return suite_two_opt(config);
    case Suite::Concentration: return suite_concentration(config);
    case Suite::Structure: return suite_structure(config);
    case Suite::Cdf: return suite_cdf(config);
  }
  throw Error(ErrorKind::ConfigInvalid, "unknown suite");
}

}  // namespace rspm::lab
