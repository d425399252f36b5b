#include "rspm/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rspm/error.hpp"
#include "rspm/io.hpp"
#include "rspm/metric.hpp"

namespace rspm::lab {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

double to_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) invalid("key '" + key + "': not a number: '" + value + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& value) {
  const double x = to_real(key, value);
  if (x != std::floor(x)) invalid("key '" + key + "': not an integer: '" + value + "'");
  return static_cast<long long>(x);
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "tau") return Suite::Tau;
  if (name == "ratio") return Suite::Ratio;
  if (name == "two-opt") return Suite::TwoOpt;
  if (name == "concentration") return Suite::Concentration;
  if (name == "structure") return Suite::Structure;
  if (name == "cdf") return Suite::Cdf;
  invalid("unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Tau: return "tau";
    case Suite::Ratio: return "ratio";
    case Suite::TwoOpt: return "two-opt";
    case Suite::Concentration: return "concentration";
    case Suite::Structure: return "structure";
    case Suite::Cdf: return "cdf";
  }
  return "?";
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) invalid("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "model") {
      if (value == "complete") c.model = GraphModel::Complete;
      else if (value == "er" || value == "erdos-renyi") c.model = GraphModel::ErdosRenyi;
      else if (value == "imported") c.model = GraphModel::Imported;
      else invalid("unknown model '" + value + "'");
    } else if (key == "n") {
      c.n = static_cast<int>(to_integer(key, value));
    } else if (key == "p") {
      c.p = to_real(key, value);
    } else if (key == "graph") {
      c.graph_file = value;
    } else if (key == "trials") {
      c.trials = static_cast<int>(to_integer(key, value));
    } else if (key == "seed") {
      try {
        c.seed = Seed(std::stoull(value));
      } catch (const std::exception&) {
        invalid("bad seed '" + value + "'");
      }
    } else if (key == "suite") {
      c.suite = parse_suite(value);
    } else if (key == "cap_cut") {
      c.caps.cut_parameters = static_cast<int>(to_integer(key, value));
    } else if (key == "cap_matching") {
      c.caps.matching = static_cast<int>(to_integer(key, value));
    } else if (key == "cap_tsp") {
      c.caps.tsp = static_cast<int>(to_integer(key, value));
    } else if (key == "cap_kmedian") {
      c.caps.kmedian_subsets = to_real(key, value);
    } else if (key == "epsilon") {
      c.epsilon = to_real(key, value);
    } else if (key == "k") {
      c.k = static_cast<int>(to_integer(key, value));
    } else if (key == "kind") {
      if (value == "matching") c.ratio_kind = RatioKind::Matching;
      else if (value == "nn") c.ratio_kind = RatioKind::NearestNeighbor;
      else if (value == "insertion") c.ratio_kind = RatioKind::Insertion;
      else if (value == "kmedian") c.ratio_kind = RatioKind::KMedian;
      else invalid("unknown ratio kind '" + value + "'");
    } else if (key == "rule") {
      try {
        c.rule = parse_insertion_rule(value);
      } catch (const Error& e) {
        invalid(e.what());
      }
    } else if (key == "start") {
      if (value == "identity") c.two_opt_start = TwoOptStart::Identity;
      else if (value == "nn") c.two_opt_start = TwoOptStart::NearestNeighbor;
      else if (value == "optimal") c.two_opt_start = TwoOptStart::Optimal;
      else invalid("unknown 2-opt start '" + value + "'");
    } else if (key == "pivot") {
      if (value == "first") c.pivot = PivotRule::FirstImprovement;
      else if (value == "best") c.pivot = PivotRule::BestImprovement;
      else invalid("unknown pivot rule '" + value + "'");
    } else if (key == "vertex") {
      c.vertex = static_cast<Vertex>(to_integer(key, value) - 1);
    } else if (key == "deltas") {
      c.delta_fractions.clear();
      std::istringstream list(value);
      for (std::string item; std::getline(list, item, ',');) c.delta_fractions.push_back(to_real(key, trim(item)));
    } else if (key == "cdf_rate") {
      c.cdf_rate = to_real(key, value);
    } else if (key == "cdf_terms") {
      c.cdf_terms = static_cast<int>(to_integer(key, value));
    } else if (key == "cdf_samples") {
      c.cdf_samples = static_cast<int>(to_integer(key, value));
    } else if (key == "cdf_k") {
      c.cdf_k = static_cast<int>(to_integer(key, value));
    } else if (key == "cdf_points") {
      c.cdf_points = static_cast<int>(to_integer(key, value));
    } else if (key == "threshold") {
      c.concentration_threshold = to_real(key, value);
    } else if (key == "threads") {
      c.threads = static_cast<int>(to_integer(key, value));
    } else if (key == "format") {
      if (value == "csv") c.format = OutputFormat::Csv;
      else if (value == "json") c.format = OutputFormat::Json;
      else invalid("unknown format '" + value + "'");
    } else if (key == "output") {
      c.output = value;
    } else {
      invalid("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open config '" + path + "'");
  return parse_config(in);
}

void validate(const ExperimentConfig& c) {
  if (c.trials < 1) invalid("trials must be >= 1");
  if (c.model != GraphModel::Imported && c.n < 1) invalid("n must be >= 1");
  if (!(c.p >= 0.0 && c.p <= 1.0)) invalid("p must lie in [0,1]");
  if (c.model == GraphModel::Imported && c.graph_file.empty()) invalid("model=imported needs graph=FILE");
  if (c.threads < 0) invalid("threads must be >= 0");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) invalid("epsilon must lie in (0,1)");
  if (c.caps.cut_parameters < 2 || c.caps.cut_parameters > 30) invalid("cap_cut must lie in [2,30]");
  if (c.caps.matching < 2 || c.caps.matching > 24) invalid("cap_matching must lie in [2,24]");
  if (c.caps.tsp < 3 || c.caps.tsp > 22) invalid("cap_tsp must lie in [3,22]");
  if (c.model == GraphModel::Imported) return;  // n comes from the file; suites recheck.

  const int n = c.n;
  if (c.vertex < 0 || c.vertex >= n) invalid("vertex must lie in 1..n");
  switch (c.suite) {
    case Suite::Ratio:
      switch (c.ratio_kind) {
        case RatioKind::Matching:
          if (n % 2 != 0) invalid("matching ratio needs even n");
          if (n > c.caps.matching) invalid("n exceeds cap_matching");
          break;
        case RatioKind::NearestNeighbor:
        case RatioKind::Insertion:
          if (n < 3 || n > c.caps.tsp) invalid("tour ratios need 3 <= n <= cap_tsp");
          break;
        case RatioKind::KMedian:
          if (c.k < 1 || c.k > n - 1) invalid("k-median ratio needs 1 <= k <= n-1");
          break;
      }
      break;
    case Suite::TwoOpt:
      if (n < 3) invalid("two-opt suite needs n >= 3");
      if (c.two_opt_start == TwoOptStart::Optimal && n > c.caps.tsp) invalid("start=optimal needs n <= cap_tsp");
      break;
    case Suite::Concentration:
      if (n < 2 || n > c.caps.cut_parameters) invalid("concentration suite needs 2 <= n <= cap_cut");
      break;
    case Suite::Structure:
      if (n < 2) invalid("structure suite needs n >= 2");
      for (double f : c.delta_fractions)
        if (!(f >= 0.0)) invalid("deltas must be nonnegative");
      break;
    case Suite::Cdf:
      if (c.cdf_rate <= 0.0 || c.cdf_terms < 1 || c.cdf_samples < 1) invalid("cdf Monte Carlo parameters must be positive");
      if (c.cdf_k < 0 || c.cdf_k > n) invalid("cdf_k must lie in [0, n]");
      if (c.cdf_points < 1) invalid("cdf_points must be >= 1");
      break;
    case Suite::Tau:
      if (n < 2) invalid("tau suite needs n >= 2");
      break;
  }
}

const double* TrialRecord::find(std::string_view name) const {
  for (const auto& [key, value] : values)
    if (key == name) return &value;
  return nullptr;
}

SummaryStats summarize(std::span<const double> values, std::string name) {
  if (values.empty()) throw Error(ErrorKind::EmptySelection, "nothing to summarize for '" + name + "'");
  SummaryStats s;
  s.name = std::move(name);
  s.count = values.size();
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.count - 1);
  }
  const double half = kZ99 * std::sqrt(s.variance / static_cast<double>(s.count));
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

SummaryStats summarize(std::span<const TrialRecord> records, const std::string& statistic) {
  std::vector<double> selected;
  for (const auto& r : records)
    if (const double* v = r.find(statistic)) selected.push_back(*v);
  return summarize(selected, statistic);
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  for (const auto& [name, count] : violations)
    if (count != 0) return false;
  return true;
}

const SummaryStats* Report::summary(std::string_view name) const {
  for (const auto& s : summaries)
    if (s.name == name) return &s;
  return nullptr;
}

const Check* Report::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

long long Report::violation_count(std::string_view name) const {
  for (const auto& [key, count] : violations)
    if (key == name) return count;
  return 0;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config, const TrialFn& fn) {
  validate(config);
  const auto total = static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(total);
  std::size_t workers = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                            : static_cast<std::size_t>(config.threads);
  workers = std::min(workers, total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        const Seed child = config.seed.split(i, "trial");
        records[i].index = i;
        records[i].seed = child.value();
        fn(child, records[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config) {
  const Graph fixed = config.model == GraphModel::Imported ? frozen_graph(config) : Graph{};
  return run_trials(config, [&](Seed child, TrialRecord& r) {
    const Graph g = config.model == GraphModel::Imported ? fixed : trial_graph(config, child);
    r.connected = g.is_connected();
    r.set("n", g.n());
    r.set("edges", static_cast<double>(g.edge_count()));
    const Metric m = build_metric(draw_weights(g, child.split("weights")));
    r.set("diameter", diameter(m));
  });
}

Graph trial_graph(const ExperimentConfig& config, Seed child) {
  switch (config.model) {
    case GraphModel::Complete: return complete_graph(config.n);
    case GraphModel::ErdosRenyi: return generate_erdos_renyi(config.n, config.p, child.split("graph"));
    case GraphModel::Imported: return io::read_graph_file(config.graph_file).graph;
  }
  invalid("unknown model");
}

Graph frozen_graph(const ExperimentConfig& config) {
  switch (config.model) {
    case GraphModel::Complete: return complete_graph(config.n);
    case GraphModel::Imported: return io::read_graph_file(config.graph_file).graph;
    case GraphModel::ErdosRenyi:
      for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
        Graph g = generate_erdos_renyi(config.n, config.p, config.seed.split(attempt, "frozen-graph"));
        if (g.is_connected()) return g;
      }
      invalid("no connected G(n,p) draw found for the frozen graph");
  }
  invalid("unknown model");
}

CutParameters cut_parameters_for(const ExperimentConfig& config, const Graph& graph) {
  // K_n has alpha = beta = 1 for every n; skip the enumeration above the cap.
  if (graph.edge_count() * 2 == static_cast<std::size_t>(graph.n()) * static_cast<std::size_t>(graph.n() - 1) &&
      graph.n() > config.caps.cut_parameters)
    return CutParameters{};
  return cut_parameters_exact(graph, config.caps.cut_parameters);
}

namespace {

std::vector<std::string> columns_of(const Report& report) {
  std::vector<std::string> columns;
  for (const auto& r : report.records)
    for (const auto& [key, value] : r.values)
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
  return columns;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const Report& report) {
  const auto columns = columns_of(report);
  out << "trial,seed,connected";
  for (const auto& c : columns) out << ',' << csv_field(c);
  out << '\n';
  for (const auto& r : report.records) {
    out << r.index << ',' << r.seed << ',' << (r.connected ? 1 : 0);
    for (const auto& c : columns) {
      out << ',';
      if (const double* v = r.find(c)) out << io::format_real(*v);
    }
    out << '\n';
  }
  out << "#summary,statistic,count,mean,variance,ci_low,ci_high,min,max,violations\n";
  for (const auto& s : report.summaries) {
    out << "#summary," << csv_field(s.name) << ',' << s.count << ',' << io::format_real(s.mean) << ','
        << io::format_real(s.variance) << ',' << io::format_real(s.ci_low) << ',' << io::format_real(s.ci_high) << ','
        << io::format_real(s.min) << ',' << io::format_real(s.max) << ',' << s.violations << '\n';
  }
  for (const auto& [name, count] : report.violations) out << "#violation," << csv_field(name) << ',' << count << '\n';
  for (const auto& c : report.checks)
    out << "#check," << csv_field(c.name) << ',' << (c.passed ? "pass" : "FAIL") << ',' << csv_field(c.detail) << '\n';
  out << "#result," << report.suite << ',' << (report.passed() ? "pass" : "FAIL") << '\n';
}

void write_json(std::ostream& out, const Report& report) {
  using nlohmann::json;
  json records = json::array();
  for (const auto& r : report.records) {
    json values = json::object();
    for (const auto& [key, value] : r.values) values[key] = value;
    records.push_back({{"trial", r.index}, {"seed", r.seed}, {"connected", r.connected}, {"values", values}});
  }
  json summary = json::object();
  for (const auto& s : report.summaries) {
    summary[s.name] = {{"count", s.count}, {"mean", s.mean},     {"variance", s.variance},
                       {"ci_low", s.ci_low}, {"ci_high", s.ci_high}, {"min", s.min},
                       {"max", s.max},       {"violations", s.violations}};
  }
  json violations = json::object();
  for (const auto& [name, count] : report.violations) violations[name] = count;
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  const json doc = {{"suite", report.suite}, {"records", records},         {"summary", summary},
                    {"violations", violations}, {"checks", checks},       {"passed", report.passed()}};
  out << doc.dump(2) << '\n';
}

std::string render(const Report& report, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Json) {
    write_json(out, report);
  } else {
    write_csv(out, report);
  }
  return out.str();
}

}  // namespace rspm::lab
