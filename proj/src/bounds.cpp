#include "rspm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rspm/error.hpp"

namespace rspm::bounds {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::ParameterOutOfRange, what);
}

void require_cut_parameters(double alpha, double beta) {
  require(alpha > 0.0 && alpha <= beta && beta <= 1.0, "need 0 < alpha <= beta <= 1");
}

// 1 - e^{-t} without cancellation for small t.
double one_minus_exp(double t) { return -std::expm1(-t); }

double log_binomial(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double harmonic(long long n) {
  require(n >= 0, "harmonic needs n >= 0");
  // Smallest terms first.
  double sum = 0.0;
  for (long long i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double exp_sum_cdf(double c, long long n, double a) {
  require(c > 0.0, "exp_sum_cdf needs c > 0");
  require(n >= 1, "exp_sum_cdf needs n >= 1");
  require(a >= 0.0, "exp_sum_cdf needs a >= 0");
  return std::pow(one_minus_exp(c * a), static_cast<double>(n));
}

Bracket tau_expectation_bounds(long long n, long long k, double alpha, double beta) {
  require(k >= 1 && k <= n, "need 1 <= k <= n");
  require_cut_parameters(alpha, beta);
  const double numerator = harmonic(k - 1) + harmonic(n - 1) - harmonic(n - k);
  const double dn = static_cast<double>(n);
  return {numerator / (beta * dn), numerator / (alpha * dn)};
}

Bracket pair_distance_bounds(long long n, double alpha, double beta) {
  require(n >= 2, "need n >= 2");
  require_cut_parameters(alpha, beta);
  const double h = harmonic(n - 1) / static_cast<double>(n - 1);
  return {h / beta, h / alpha};
}

Bracket tau_cdf_bounds(double x, long long n, long long k, double alpha, double beta) {
  require(x >= 0.0, "need x >= 0");
  require(k >= 1 && k <= n, "need 1 <= k <= n");
  require_cut_parameters(alpha, beta);
  const double dn = static_cast<double>(n);
  const double from_tail = std::pow(one_minus_exp(alpha * static_cast<double>(n - k) * x), static_cast<double>(k - 1));
  const double from_halving = std::pow(one_minus_exp(alpha * dn * x / 4.0), dn);
  const double upper = std::pow(one_minus_exp(beta * dn * x), static_cast<double>(k - 1));
  // k == 1: tau_1 == 0, so F_1 == 1 on x >= 0.
  if (k == 1) return {1.0, 1.0};
  return {std::max(from_tail, from_halving), upper};
}

double diameter_tail(double c, long long n) {
  require(n >= 1, "need n >= 1");
  return std::min(1.0, std::pow(static_cast<double>(n), 2.0 - c / 4.0));
}

BallTail ball_tail(double delta, long long n, double alpha) {
  if (n < 5) throw Error(ErrorKind::NTooSmall, "ball tail bound needs n >= 5");
  require(delta >= 0.0, "need delta >= 0");
  require(alpha > 0.0 && alpha <= 1.0, "need 0 < alpha <= 1");
  const double exponent = alpha * delta * static_cast<double>(n) / 5.0;
  return {std::min(std::exp(exponent), (static_cast<double>(n) + 1.0) / 2.0), std::exp(-exponent)};
}

ClusterScale cluster_scale(double delta, long long n, double alpha) {
  require(delta >= 0.0, "need delta >= 0");
  require(n >= 1, "need n >= 1");
  require(alpha > 0.0 && alpha <= 1.0, "need 0 < alpha <= 1");
  const double dn = static_cast<double>(n);
  const double s = std::min(std::exp(alpha * delta * dn / 5.0), (dn + 1.0) / 2.0);
  return {s, dn / s};
}

double janson_lower_tail(double lambda, double mu, double a_star) {
  require(lambda > 0.0 && lambda <= 1.0, "need 0 < lambda <= 1");
  require(mu > 0.0 && a_star > 0.0, "need mu > 0 and a_* > 0");
  return std::exp(-a_star * mu * (lambda - 1.0 - std::log(lambda)));
}

double sm_tail(double phi, double c, long long n) {
  require(n >= 2, "need n >= 2");
  const double dn = static_cast<double>(n);
  require(phi > 0.0 && phi <= (dn - 1.0) / dn, "need 0 < phi <= (n-1)/n");
  require(c > 0.0 && c <= 2.0 * phi * phi / std::numbers::e, "need 0 < c <= 2 phi^2 / e");
  return std::min(1.0, std::exp(phi * dn * (2.0 + std::log(c / (2.0 * phi * phi)))));
}

double kmedian_order_pdf(double x, long long n, long long k, double beta) {
  require(k >= 1 && k <= n - 1, "need 1 <= k <= n-1");
  require(x >= 0.0, "need x >= 0");
  require(beta > 0.0, "need beta > 0");
  const double bk = beta * static_cast<double>(k);
  double log_f = std::log(bk) + log_binomial(n - 1, k) - bk * x;
  const long long power = n - k - 1;
  if (power > 0) {
    if (x == 0.0) return 0.0;
    log_f += static_cast<double>(power) * std::log(one_minus_exp(beta * x));
  }
  return std::exp(log_f);
}

const std::map<std::string, std::string>& formula_catalog() {
  static const std::map<std::string, std::string> catalog = {
      {"harmonic", "n"},
      {"exp_sum_cdf", "c,n,a"},
      {"tau_expectation", "n,k,alpha,beta"},
      {"pair_distance", "n,alpha,beta"},
      {"tau_cdf", "x,n,k,alpha,beta"},
      {"diameter_tail", "c,n"},
      {"ball_tail", "delta,n,alpha"},
      {"cluster_scale", "delta,n,alpha"},
      {"janson", "lambda,mu,a_star"},
      {"sm_tail", "phi,c,n"},
      {"kmedian_pdf", "x,n,k,beta"},
  };
  return catalog;
}

BoundValue evaluate(const std::string& formula_id, const std::map<std::string, double>& params) {
  BoundValue out;
  out.formula_id = formula_id;
  out.inputs = params;

  auto real = [&](const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw Error(ErrorKind::InvalidArgument, formula_id + " needs parameter '" + name + "'");
    return it->second;
  };
  auto integer = [&](const std::string& name) {
    const double v = real(name);
    if (v != std::floor(v)) throw Error(ErrorKind::InvalidArgument, "parameter '" + name + "' must be an integer");
    return static_cast<long long>(v);
  };
  auto pair = [&](double first, double second) {
    out.value = first;
    out.second = second;
    out.has_second = true;
  };

  if (formula_id == "harmonic") {
    out.value = harmonic(integer("n"));
  } else if (formula_id == "exp_sum_cdf") {
    out.value = exp_sum_cdf(real("c"), integer("n"), real("a"));
  } else if (formula_id == "tau_expectation") {
    const auto b = tau_expectation_bounds(integer("n"), integer("k"), real("alpha"), real("beta"));
    pair(b.lower, b.upper);
  } else if (formula_id == "pair_distance") {
    const auto b = pair_distance_bounds(integer("n"), real("alpha"), real("beta"));
    pair(b.lower, b.upper);
  } else if (formula_id == "tau_cdf") {
    const auto b = tau_cdf_bounds(real("x"), integer("n"), integer("k"), real("alpha"), real("beta"));
    pair(b.lower, b.upper);
  } else if (formula_id == "diameter_tail") {
    const double c = real("c");
    const auto n = integer("n");
    out.value = diameter_tail(c, n);
    out.clamped = std::pow(static_cast<double>(n), 2.0 - c / 4.0) > 1.0;
  } else if (formula_id == "ball_tail") {
    const auto b = ball_tail(real("delta"), integer("n"), real("alpha"));
    pair(b.threshold, b.probability);
  } else if (formula_id == "cluster_scale") {
    const auto s = cluster_scale(real("delta"), integer("n"), real("alpha"));
    pair(s.s_delta, s.count_scale);
  } else if (formula_id == "janson") {
    out.value = janson_lower_tail(real("lambda"), real("mu"), real("a_star"));
  } else if (formula_id == "sm_tail") {
    const double phi = real("phi");
    const double c = real("c");
    const auto n = integer("n");
    out.value = sm_tail(phi, c, n);
    out.clamped = phi * static_cast<double>(n) * (2.0 + std::log(c / (2.0 * phi * phi))) > 0.0;
  } else if (formula_id == "kmedian_pdf") {
    out.value = kmedian_order_pdf(real("x"), integer("n"), integer("k"), real("beta"));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown formula id '" + formula_id + "'");
  }
  return out;
}

}  // namespace rspm::bounds
