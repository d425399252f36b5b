#pragma once

#include <map>
#include <string>
#include <utility>

namespace rspm::bounds {

// Closed-form structural and tail bounds for the random metric, used as
// reference curves for the experiments.

double harmonic(long long n);

// P(X <= a) for X a sum of independent Exp(c*i), i = 1..n: (1 - e^{-ca})^n.
double exp_sum_cdf(double c, long long n, double a);

struct Bracket {
  double lower;
  double upper;
};

// Bracket on E[tau_k(v)]: (H_{k-1} + H_{n-1} - H_{n-k}) / (beta n) and / (alpha n).
Bracket tau_expectation_bounds(long long n, long long k, double alpha, double beta);

// Bracket on E[d(u,v)] for a uniformly random pair u != v, obtained by
// averaging the tau bracket over k = 2..n: H_{n-1} / (beta (n-1)) and / (alpha (n-1)).
Bracket pair_distance_bounds(long long n, double alpha, double beta);

// Bracket on F_k(x) = P(tau_k(v) <= x). The lower end is the pointwise max of
// the two available lower bounds.
Bracket tau_cdf_bounds(double x, long long n, long long k, double alpha, double beta);

// Clamped to [0,1]: min{1, n^{2 - c/4}}.
double diameter_tail(double c, long long n);

struct BallTail {
  double threshold;
  double probability;
};
// (min{exp(alpha delta n / 5), (n+1)/2}, exp(-alpha delta n / 5)); n >= 5.
BallTail ball_tail(double delta, long long n, double alpha);

struct ClusterScale {
  double s_delta;
  double count_scale;  // n / s_delta
};
ClusterScale cluster_scale(double delta, long long n, double alpha);

// exp(-a_* mu (lambda - 1 - ln lambda)), 0 < lambda <= 1.
double janson_lower_tail(double lambda, double mu, double a_star);

// min{1, exp(phi n (2 + ln(c / (2 phi^2)))))}; requires 0 < phi <= (n-1)/n
// and 0 < c <= 2 phi^2 / e.
double sm_tail(double phi, double c, long long n);

// Density of the sum of Exp(beta*i), i = k..n-1, i.e. of the (n-k)-th
// smallest of n-1 Exp(beta) variables.
double kmedian_order_pdf(double x, long long n, long long k, double beta);

// Generic evaluation for the command line: formula id plus named parameters.
struct BoundValue {
  double value = 0.0;
  std::string formula_id;
  std::map<std::string, double> inputs;
  // Secondary output for the formulas that return a pair.
  double second = 0.0;
  bool has_second = false;
  // The raw formula exceeded 1 and was clamped.
  bool clamped = false;
};

BoundValue evaluate(const std::string& formula_id, const std::map<std::string, double>& params);

// Formula ids accepted by evaluate(), with their parameter names.
const std::map<std::string, std::string>& formula_catalog();

}  // namespace rspm::bounds
