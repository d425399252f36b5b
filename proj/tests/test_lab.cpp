#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rspm/error.hpp"
#include "rspm/lab.hpp"

using namespace rspm;
using namespace rspm::lab;

namespace {

ExperimentConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ErrorKind config_error(const std::string& text) {
  try {
    config_from(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected config rejection for: " << text);
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = config_from(R"(# ratio experiment
model = er
n = 12
p = 0.8
trials = 7   # few
seed = 42
suite = ratio
kind = insertion
rule = farthest
vertex = 3
deltas = 0, 0.5,1
threads = 4
format = json
)");
  CHECK(c.model == GraphModel::ErdosRenyi);
  CHECK(c.n == 12);
  CHECK(c.p == 0.8);
  CHECK(c.trials == 7);
  CHECK(c.seed == Seed(42));
  CHECK(c.suite == Suite::Ratio);
  CHECK(c.ratio_kind == RatioKind::Insertion);
  CHECK(c.rule == InsertionRule::Farthest);
  CHECK(c.vertex == 2);
  CHECK(c.delta_fractions == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(c.threads == 4);
  CHECK(c.format == OutputFormat::Json);
}

TEST_CASE("config validation") {
  CHECK(config_error("trials = 0\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("colour = red\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("n 5\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("n = five\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("p = 1.5\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("suite = ratio\nkind = matching\nn = 11\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("suite = ratio\nkind = matching\nn = 30\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("suite = ratio\nkind = kmedian\nn = 10\nk = 10\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("suite = concentration\nn = 40\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("model = imported\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("suite = bogus\n") == ErrorKind::ConfigInvalid);
  CHECK(config_error("vertex = 11\nn = 10\n") == ErrorKind::ConfigInvalid);
  CHECK_NOTHROW(config_from("suite = ratio\nkind = kmedian\nn = 10\nk = 9\n"));
}

TEST_CASE("summarize") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  const SummaryStats s = summarize(v, "x");
  CHECK(s.count == 3);
  CHECK(s.mean == 2.0);
  CHECK(s.variance == doctest::Approx(1.0));
  CHECK(s.min == 1.0);
  CHECK(s.max == 3.0);
  const double half = kZ99 * std::sqrt(1.0 / 3.0);
  CHECK(s.ci_low == doctest::Approx(2.0 - half));
  CHECK(s.ci_high == doctest::Approx(2.0 + half));

  const std::vector<double> flat(10, 4.5);
  const SummaryStats f = summarize(flat);
  CHECK(f.variance == 0.0);
  CHECK(f.ci_low == 4.5);
  CHECK(f.ci_high == 4.5);

  CHECK_THROWS_AS(summarize(std::vector<double>{}), Error);
  ExperimentConfig c;
  c.trials = 2;
  const auto records = run_trials(c);
  try {
    summarize(records, "missing");
    FAIL("expected EmptySelection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptySelection);
  }
}

TEST_CASE("99% confidence interval coverage for Exp(1) means") {
  // Each experiment averages 10^4 draws; the interval must cover 1.0 most of the time.
  int covered = 0;
  const int experiments = 200;
  for (int e = 0; e < experiments; ++e) {
    Stream s(Seed(2024).split(static_cast<std::uint64_t>(e), "coverage"));
    std::vector<double> draws(10000);
    for (auto& d : draws) d = s.exponential();
    const SummaryStats st = summarize(draws);
    if (st.ci_low <= 1.0 && 1.0 <= st.ci_high) ++covered;
  }
  CHECK(covered >= experiments * 95 / 100);
}

TEST_CASE("run_trials determinism across thread counts") {
  ExperimentConfig c;
  c.model = GraphModel::ErdosRenyi;
  c.n = 14;
  c.p = 0.3;
  c.trials = 64;
  c.seed = Seed(11);
  c.threads = 1;
  const auto serial = run_trials(c);
  c.threads = 4;
  const auto parallel = run_trials(c);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].index == i);
    CHECK(serial[i].seed == parallel[i].seed);
    CHECK(serial[i].seed == c.seed.split(i, "trial").value());
    CHECK(serial[i].connected == parallel[i].connected);
    CHECK(serial[i].values == parallel[i].values);
  }

  c.trials = 1;
  CHECK(run_trials(c).size() == 1);
}

TEST_CASE("complete graph trials are all connected") {
  ExperimentConfig c;
  c.n = 20;
  c.trials = 100;
  const auto records = run_trials(c);
  CHECK(records.size() == 100);
  for (const auto& r : records) CHECK(r.connected);
}

TEST_CASE("exceptions in trials propagate") {
  ExperimentConfig c;
  c.trials = 10;
  c.threads = 3;
  CHECK_THROWS_AS(run_trials(c, [](Seed, TrialRecord& r) {
                    if (r.index == 7) throw Error(ErrorKind::InvalidArgument, "boom");
                  }),
                  Error);
}

TEST_CASE("tau suite on K_2 matches Exp(1)") {
  ExperimentConfig c;
  c.n = 2;
  c.trials = 4000;
  c.suite = Suite::Tau;
  const Report r = run_suite(c);
  const SummaryStats* tau2 = r.summary("tau_2");
  REQUIRE(tau2 != nullptr);
  CHECK(tau2->ci_intersects(1.0, 1.0));
  CHECK(r.passed());
}

TEST_CASE("tau suite on a frozen ER graph") {
  ExperimentConfig c;
  c.model = GraphModel::ErdosRenyi;
  c.n = 12;
  c.p = 0.8;
  c.trials = 2000;
  c.threads = 0;
  c.suite = Suite::Tau;
  const Report r = run_suite(c);
  for (int k = 1; k <= 12; ++k) {
    const Check* chk = r.check("tau_" + std::to_string(k));
    REQUIRE(chk != nullptr);
    CHECK_MESSAGE(chk->passed, chk->detail);
  }
  CHECK(r.passed());
}

TEST_CASE("ratio suite") {
  ExperimentConfig c = config_from("suite = ratio\nkind = kmedian\nn = 9\nk = 3\ntrials = 30\n");
  const Report r = run_suite(c);
  CHECK(r.violation_count("ratio_below_one") == 0);
  CHECK(r.summary("ratio")->min >= 1.0 - 1e-12);
  CHECK(r.passed());

  c = config_from("suite = ratio\nkind = matching\nmodel = er\np = 0.2\nn = 8\ntrials = 40\n");
  const Report sparse = run_suite(c);
  std::size_t skipped = 0;
  for (const auto& rec : sparse.records)
    if (!rec.connected) {
      ++skipped;
      CHECK(rec.find("ratio") == nullptr);
    }
  CHECK(skipped > 0);
}

TEST_CASE("two-opt suite") {
  const Report r = run_suite(config_from("suite = two-opt\nn = 10\ntrials = 20\n"));
  CHECK(r.violation_count("cost_not_strictly_decreasing") == 0);
  CHECK(r.violation_count("not_local_optimum") == 0);
  CHECK(r.violation_count("iterations_above_scale") == 0);
  const Report opt = run_suite(config_from("suite = two-opt\nn = 8\nstart = optimal\ntrials = 10\n"));
  CHECK(opt.summary("iterations")->max == 0.0);
}

TEST_CASE("concentration suite extremes") {
  const Report full = run_suite(config_from("suite = concentration\nmodel = er\np = 1\nn = 10\ntrials = 5\n"));
  CHECK(full.summary("within")->mean == 1.0);
  CHECK(full.passed());

  const Report empty = run_suite(config_from("suite = concentration\nmodel = er\np = 0\nn = 6\ntrials = 5\n"));
  const Check* band = empty.check("within_band");
  REQUIRE(band != nullptr);
  CHECK(band->detail.find("zero eligible") != std::string::npos);
}

TEST_CASE("structure suite") {
  for (const char* text : {"suite = structure\nn = 8\ntrials = 20\n",
                           "suite = structure\nmodel = er\nn = 12\np = 0.8\ntrials = 30\nthreads = 2\n"}) {
    const Report r = run_suite(config_from(text));
    for (const auto& [name, count] : r.violations) CHECK_MESSAGE(count == 0, name);
    CHECK(r.summary("sandwich_violations") == nullptr);
    CHECK(r.passed());
  }
}

TEST_CASE("cdf suite") {
  const Report r = run_suite(config_from("suite = cdf\ncdf_rate = 2\ncdf_terms = 3\ncdf_samples = 20000\nn = 8\ntrials = 500\n"));
  const Check* sum = r.check("exp_sum_sup_diff");
  REQUIRE(sum != nullptr);
  CHECK_MESSAGE(sum->passed, sum->detail);
  const Check* tau = r.check("tau_cdf_bracket");
  REQUIRE(tau != nullptr);
  CHECK_MESSAGE(tau->passed, tau->detail);
}

TEST_CASE("report rendering is deterministic") {
  ExperimentConfig c = config_from("suite = ratio\nkind = nn\nn = 7\ntrials = 12\n");
  const std::string a = render(run_suite(c), OutputFormat::Csv);
  c.threads = 3;
  const std::string b = render(run_suite(c), OutputFormat::Csv);
  CHECK(a == b);
  CHECK(a.find("#summary") != std::string::npos);
  const std::string json = render(run_suite(c), OutputFormat::Json);
  CHECK(json.find("\"suite\"") != std::string::npos);
}
