// Acceptance gate: one PASS/FAIL line per criterion. Every tolerance and
// sample size used for a verdict is a named constant below.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rspm/bounds.hpp"
#include "rspm/error.hpp"
#include "rspm/heuristics.hpp"
#include "rspm/lab.hpp"

using namespace rspm;
using namespace rspm::lab;

namespace {

constexpr double kCutRuntimeLimitSeconds = 10.0;
constexpr double kDistanceLawRuntimeLimitSeconds = 120.0;
constexpr double kCutInequalityRuntimeLimitSeconds = 300.0;
constexpr double kOracleTolerance = 1e-9;
constexpr double kRatioEnvelope = 3.0;
constexpr double kRatioSlack = 1e-12;
constexpr double kSupDiffLimit = 0.02;
constexpr int kCdfSamples = 100000;
constexpr double kPdfMassTolerance = 1e-6;
constexpr int kStructureInstances = 500;
constexpr int kSandwichInstancesPerSize = 125;
constexpr int kOracleMetrics = 200;
constexpr int kRatioTrials = 500;
constexpr int kTwoOptTrials = 200;

// Reference values computed independently with 50-digit arithmetic.
constexpr double kH99Over99 = 0.0522967426;
constexpr double kTwoH99Over100 = 0.1035475504;
constexpr double kReferenceTolerance = 1e-9;

int failures = 0;

void verdict(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s [%d] %s :: %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ExperimentConfig make(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

long long violations_of(const Report& r) {
  long long total = 0;
  for (const auto& [name, count] : r.violations) total += count;
  return total;
}

std::size_t eligible(const Report& r) {
  std::size_t c = 0;
  for (const auto& rec : r.records) c += rec.connected ? 1 : 0;
  return c;
}

Metric random_metric(int n, Seed seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Seed s = seed.split(attempt, "instance");
    const Graph g = generate_erdos_renyi(n, 0.6, s.split("graph"));
    if (g.is_connected()) return build_metric(draw_weights(g, s.split("weights")));
  }
}

void run(int id, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    verdict(id, false, what, std::string("exception: ") + e.what());
  }
}

void criterion_cut_parameters() {
  run(1, "exact cut parameters", [] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 12; ++n) {
      const CutParameters c = cut_parameters_exact(complete_graph(n));
      if (c.alpha != 1.0 || c.beta != 1.0) {
        ok = false;
        detail += "K_" + std::to_string(n) + " gave (" + num(c.alpha) + "," + num(c.beta) + ") ";
      }
    }
    struct Case {
      const char* name;
      Graph g;
      double alpha, beta;
    };
    const Case cases[] = {{"path3", Graph(3, {{0, 1}, {1, 2}}), 0.5, 1.0},
                          {"star4", Graph(4, {{0, 1}, {0, 2}, {0, 3}}), 1.0 / 3.0, 1.0}};
    for (const auto& c : cases) {
      const CutParameters got = cut_parameters_exact(c.g);
      const auto [oa, ob] = oracle::cut_ratios(c.g);
      const bool match = got.alpha == oa && got.beta == ob && got.alpha == c.alpha && got.beta == c.beta;
      ok = ok && match;
      detail += std::string(c.name) + "=(" + num(got.alpha) + "," + num(got.beta) + ") oracle=(" + num(oa) + "," +
                num(ob) + ") ";
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < kCutRuntimeLimitSeconds;
    verdict(1, ok, "exact cut parameters", detail + "K_2..K_12=(1,1); " + num(elapsed) + " s");
  });
}

void criterion_distance_law() {
  run(2, "complete-graph distance law", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = run_suite(make("suite = tau\nn = 100\ntrials = 500\nseed = 2\nthreads = 0\n"));
    const double elapsed = seconds_since(t0);
    const SummaryStats* d = r.summary("d_pair");
    const SummaryStats* t = r.summary("tau_100");
    const double h99 = bounds::harmonic(99);
    const bool refs = std::abs(h99 / 99.0 - kH99Over99) < kReferenceTolerance &&
                      std::abs(2.0 * h99 / 100.0 - kTwoH99Over100) < kReferenceTolerance;
    const bool ok = refs && d && t && d->ci_intersects(kH99Over99, kH99Over99) &&
                    t->ci_intersects(kTwoH99Over100, kTwoH99Over100) && elapsed < kDistanceLawRuntimeLimitSeconds;
    verdict(2, ok, "complete-graph distance law",
            "d_pair CI [" + num(d->ci_low) + "," + num(d->ci_high) + "] vs " + num(kH99Over99) + "; tau_100 CI [" +
                num(t->ci_low) + "," + num(t->ci_high) + "] vs " + num(kTwoH99Over100) + "; " + num(elapsed) + " s");
  });
}

void criteria_structure() {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  try {
    r = run_suite(make("suite = structure\nmodel = er\nn = 12\np = 0.8\ntrials = " +
                       std::to_string(kStructureInstances) + "\nseed = 3\nthreads = 0\n"));
  } catch (const std::exception& e) {
    verdict(3, false, "cut-size inequality for nearest sets", std::string("exception: ") + e.what());
    verdict(4, false, "clusters within 4 Delta", std::string("exception: ") + e.what());
    return;
  }
  const double elapsed = seconds_since(t0);
  const std::size_t n_eligible = eligible(r);
  const long long chi = r.violation_count("chi_bounds");
  verdict(3, chi == 0 && n_eligible == kStructureInstances && elapsed < kCutInequalityRuntimeLimitSeconds,
          "cut-size inequality for nearest sets",
          std::to_string(chi) + " violations over " + std::to_string(n_eligible) + " connected instances; " +
              num(elapsed) + " s");

  const long long clusters = r.violation_count("cluster_4delta");
  std::string counts;
  for (std::size_t i = 0; i < 4; ++i) {
    const SummaryStats* c = r.summary("clusters_d" + std::to_string(i));
    const SummaryStats* s = r.summary("count_scale_d" + std::to_string(i));
    if (c && s) counts += "grid" + std::to_string(i) + ": mean clusters " + num(c->mean) + " vs n/s " + num(s->mean) + "; ";
  }
  verdict(4, clusters == 0 && n_eligible == kStructureInstances, "clusters within 4 Delta",
          std::to_string(clusters) + " violations; " + counts);
}

void criterion_sandwich() {
  run(5, "TSP >= MM >= S_{n/2}", [] {
    long long violations = 0;
    std::size_t instances = 0;
    std::size_t with_sandwich = 0;
    for (int n : {8, 10, 12, 14}) {
      const Report r = run_suite(make("suite = structure\nmodel = er\np = 0.8\nn = " + std::to_string(n) +
                                      "\ntrials = " + std::to_string(kSandwichInstancesPerSize) + "\nseed = " +
                                      std::to_string(50 + n) + "\nthreads = 0\n"));
      violations += r.violation_count("sandwich");
      instances += eligible(r);
      for (const auto& rec : r.records) with_sandwich += rec.find("tsp") ? 1 : 0;
    }
    verdict(5, violations == 0 && with_sandwich == 4 * kSandwichInstancesPerSize, "TSP >= MM >= S_{n/2}",
            std::to_string(violations) + " violations over " + std::to_string(with_sandwich) + " instances (" +
                std::to_string(instances) + " connected)");
  });
}

void criterion_oracles() {
  run(6, "exact solvers equal brute force", [] {
    double worst_matching = 0.0, worst_tsp = 0.0;
    for (int i = 0; i < kOracleMetrics; ++i) {
      const int n = 2 + 2 * (i % 5);  // 2, 4, ..., 10
      const Metric m = random_metric(n, Seed(600).split(static_cast<std::uint64_t>(i), "matching"));
      worst_matching = std::max(worst_matching, std::abs(exact_matching(m).cost - oracle::min_perfect_matching(m)));
    }
    for (int i = 0; i < kOracleMetrics; ++i) {
      const int n = 3 + i % 6;  // 3..8
      const Metric m = random_metric(n, Seed(601).split(static_cast<std::uint64_t>(i), "tsp"));
      worst_tsp = std::max(worst_tsp, std::abs(exact_tsp(m).cost - oracle::min_tour(m)));
    }
    verdict(6, worst_matching <= kOracleTolerance && worst_tsp <= kOracleTolerance, "exact solvers equal brute force",
            "max |MM - brute| = " + num(worst_matching) + ", max |TSP - brute| = " + num(worst_tsp) + " over " +
                std::to_string(kOracleMetrics) + " metrics each");
  });
}

void criterion_ratios() {
  run(7, "heuristic ratio envelopes", [] {
    struct Case {
      const char* label;
      std::string config;
    };
    const std::string common = "trials = " + std::to_string(kRatioTrials) + "\nthreads = 0\n";
    const Case cases[] = {{"GR/MM n=14", "suite = ratio\nkind = matching\nn = 14\nseed = 71\n" + common},
                          {"NN/TSP n=12", "suite = ratio\nkind = nn\nn = 12\nseed = 72\n" + common},
                          {"IN_nearest/TSP n=12", "suite = ratio\nkind = insertion\nrule = nearest\nn = 12\nseed = 73\n" + common},
                          {"TR/ME n=15 k=2", "suite = ratio\nkind = kmedian\nn = 15\nk = 2\nseed = 74\n" + common}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
      const Report r = run_suite(make(c.config));
      const SummaryStats* s = r.summary("ratio");
      const bool pass = s && s->count == static_cast<std::size_t>(kRatioTrials) && s->mean < kRatioEnvelope &&
                        s->min >= 1.0 - kRatioSlack && r.violation_count("ratio_below_one") == 0;
      ok = ok && pass;
      detail += std::string(c.label) + " mean " + num(s ? s->mean : NAN) + " min " + num(s ? s->min : NAN) + "; ";
    }
    verdict(7, ok, "heuristic ratio envelopes", detail);
  });
}

void criterion_cdf() {
  run(8, "exponential-sum CDF and order-statistic density", [] {
    bool ok = true;
    std::string detail;
    struct Case {
      double c;
      int n;
    };
    for (const Case& c : {Case{1.0, 1}, Case{2.0, 3}, Case{0.5, 5}}) {
      const Report r = run_suite(make("suite = cdf\nn = 4\ntrials = 50\ncdf_rate = " + num(c.c) +
                                      "\ncdf_terms = " + std::to_string(c.n) +
                                      "\ncdf_samples = " + std::to_string(kCdfSamples) + "\nseed = 8\n"));
      const SummaryStats* s = r.summary("exp_sum_sup_diff");
      const bool pass = s && s->count == static_cast<std::size_t>(kCdfSamples) && s->mean < kSupDiffLimit;
      ok = ok && pass;
      detail += "(c=" + num(c.c) + ",n=" + std::to_string(c.n) + ") sup " + num(s ? s->mean : NAN) + "; ";
    }

    using boost::math::quadrature::gauss_kronrod;
    double worst = 0.0;
    int grid = 0;
    for (long long n : {2, 5, 10, 20, 50})
      for (long long k : {1LL, 3LL, n / 2, n - 1}) {
        if (k < 1 || k > n - 1) continue;
        for (double beta : {0.25, 0.5, 1.0}) {
          const double mass = gauss_kronrod<double, 61>::integrate(
              [&](double x) { return bounds::kmedian_order_pdf(x, n, k, beta); }, 0.0,
              std::numeric_limits<double>::infinity(), 15, 1e-13);
          worst = std::max(worst, std::abs(mass - 1.0));
          ++grid;
        }
      }
    ok = ok && worst <= kPdfMassTolerance;
    verdict(8, ok, "exponential-sum CDF and order-statistic density",
            detail + "density mass max |1 - integral| = " + num(worst) + " over " + std::to_string(grid) + " (n,k,beta)");
  });
}

void criterion_two_opt() {
  run(9, "2-opt monotone and locally optimal", [] {
    const Report r = run_suite(make("suite = two-opt\nn = 12\nstart = identity\ntrials = " +
                                    std::to_string(kTwoOptTrials) + "\nseed = 9\nthreads = 0\n"));
    const SummaryStats* t = r.summary("iterations");
    const double* scale = r.records.empty() ? nullptr : r.records.front().find("iteration_scale");
    const bool ok = t && t->count == static_cast<std::size_t>(kTwoOptTrials) &&
                    r.violation_count("cost_not_strictly_decreasing") == 0 &&
                    r.violation_count("not_local_optimum") == 0 && r.violation_count("iterations_above_scale") == 0;
    verdict(9, ok, "2-opt monotone and locally optimal",
            "T mean " + num(t ? t->mean : NAN) + " max " + num(t ? t->max : NAN) +
                (scale ? " vs scale " + num(*scale) : std::string()) + "; violations " + std::to_string(violations_of(r)));
  });
}

void criterion_determinism() {
  run(10, "byte-identical CSV across runs and thread counts", [] {
    bool ok = true;
    std::string detail;
    for (const char* base : {"suite = structure\nmodel = er\nn = 10\np = 0.6\ntrials = 60\nseed = 10\n",
                             "suite = ratio\nkind = insertion\nrule = random\nn = 9\ntrials = 80\nseed = 11\n",
                             "suite = tau\nmodel = er\nn = 15\np = 0.5\ntrials = 100\nseed = 12\n"}) {
      const std::string serial_a = render(run_suite(make(std::string(base) + "threads = 1\n")), OutputFormat::Csv);
      const std::string serial_b = render(run_suite(make(std::string(base) + "threads = 1\n")), OutputFormat::Csv);
      const std::string parallel = render(run_suite(make(std::string(base) + "threads = 4\n")), OutputFormat::Csv);
      const bool same = serial_a == serial_b && serial_a == parallel;
      ok = ok && same;
      detail += std::to_string(serial_a.size()) + " bytes " + (same ? "identical" : "DIFFER") + "; ";
    }
    verdict(10, ok, "byte-identical CSV across runs and thread counts", detail);
  });
}

}  // namespace

int main() {
  criterion_cut_parameters();
  criterion_distance_law();
  criteria_structure();
  criterion_sandwich();
  criterion_oracles();
  criterion_ratios();
  criterion_cdf();
  criterion_two_opt();
  criterion_determinism();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
