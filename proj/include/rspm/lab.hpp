#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rspm/graph.hpp"
#include "rspm/heuristics.hpp"
#include "rspm/random.hpp"

namespace rspm::lab {

enum class GraphModel { Complete, ErdosRenyi, Imported };
enum class Suite { Tau, Ratio, TwoOpt, Concentration, Structure, Cdf };
enum class RatioKind { Matching, NearestNeighbor, Insertion, KMedian };
enum class TwoOptStart { Identity, NearestNeighbor, Optimal };
enum class OutputFormat { Csv, Json };

struct Caps {
  int cut_parameters = kDefaultCutParameterCap;
  int matching = kExactMatchingCap;
  int tsp = kExactTspCap;
  double kmedian_subsets = kExactKMedianSubsetCap;
};

// Flat key=value configuration; see parse_config for the key names.
struct ExperimentConfig {
  GraphModel model = GraphModel::Complete;
  int n = 10;
  double p = 1.0;
  std::string graph_file;
  int trials = 100;
  Seed seed{1};
  Suite suite = Suite::Tau;
  Caps caps;
  double epsilon = 0.5;
  int k = 2;
  RatioKind ratio_kind = RatioKind::Matching;
  InsertionRule rule = InsertionRule::Nearest;
  TwoOptStart two_opt_start = TwoOptStart::Identity;
  PivotRule pivot = PivotRule::FirstImprovement;
  // Center used by the tau and cdf suites.
  Vertex vertex = 0;
  // Structure suite: radii as fractions of the diameter.
  std::vector<double> delta_fractions = {0.0, 0.125, 0.25, 0.5};
  // Cdf suite: Monte Carlo of sum_{i=1}^{cdf_terms} Exp(cdf_rate * i).
  double cdf_rate = 1.0;
  int cdf_terms = 1;
  int cdf_samples = 100000;
  // Cdf suite: which tau_k to bracket (0 means k = n) and on how many grid points.
  int cdf_k = 0;
  int cdf_points = 50;
  // Concentration suite: minimum fraction of eligible draws inside the band.
  double concentration_threshold = 0.5;
  // 0 means one worker per hardware thread.
  int threads = 1;
  OutputFormat format = OutputFormat::Csv;
  std::string output;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);
// Throws ConfigInvalid.
void validate(const ExperimentConfig& config);

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool connected = true;
  std::vector<std::pair<std::string, double>> values;

  void set(std::string name, double value) { values.emplace_back(std::move(name), value); }
  const double* find(std::string_view name) const;
};

// 99% two-sided normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct SummaryStats {
  std::string name;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double min = 0.0;
  double max = 0.0;
  long long violations = 0;

  bool ci_intersects(double lo, double hi) const { return lo <= ci_high && ci_low <= hi; }
};

SummaryStats summarize(std::span<const double> values, std::string name = {});
// Over the records that carry `statistic`.
SummaryStats summarize(std::span<const TrialRecord> records, const std::string& statistic);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<TrialRecord> records;
  std::vector<SummaryStats> summaries;
  std::vector<Check> checks;
  // Deterministic invariants; every count must be zero in a passing run.
  std::vector<std::pair<std::string, long long>> violations;

  bool passed() const;
  const SummaryStats* summary(std::string_view name) const;
  const Check* check(std::string_view name) const;
  long long violation_count(std::string_view name) const;
};

using TrialFn = std::function<void(Seed child, TrialRecord& record)>;

// Trial i runs with seed.split(i, "trial"). Records come back in index
// order whatever the thread count.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config, const TrialFn& fn);
// Default trial: draw an instance and record size, connectivity, diameter.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config);

// Instance sources shared by the suites.
Graph trial_graph(const ExperimentConfig& config, Seed child);
// One connected graph reused by every trial (first connected draw for G(n,p)).
Graph frozen_graph(const ExperimentConfig& config);
CutParameters cut_parameters_for(const ExperimentConfig& config, const Graph& graph);

Report suite_tau_bounds(const ExperimentConfig& config);
Report suite_ratio(const ExperimentConfig& config);
Report suite_two_opt(const ExperimentConfig& config);
Report suite_concentration(const ExperimentConfig& config);
Report suite_structure(const ExperimentConfig& config);
Report suite_cdf(const ExperimentConfig& config);
Report run_suite(const ExperimentConfig& config);

void write_csv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);
std::string render(const Report& report, OutputFormat format);

}  // namespace rspm::lab
