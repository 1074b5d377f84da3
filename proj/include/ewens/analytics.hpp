#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ewens/theta.hpp"

namespace ewens::analytics {

// log of the rising factorial x(x+1)...(x+n-1); 0 for n = 0.
double rising_factorial_log(double x, std::int64_t n);

// Psi(x) for x > 0, |error| < 1e-10 over [1e-3, 1e6].  Upward
// recurrence to x >= 10, then the asymptotic series with Bernoulli
// terms.
double digamma(double x);

// Delta(x, n) = sum_{i=0}^{n-1} 1/(x+i) = Psi(x+n) - Psi(x).
// Compensated direct summation up to n = 1e6, digamma difference above.
double delta(double x, std::int64_t n);

// --- closed forms under the record-biased distribution on S_n ---

double p_record_at(std::int64_t n, double theta, std::int64_t i);
double expected_records(std::int64_t n, double theta);
double p_descent_at(std::int64_t n, double theta, std::int64_t i);
double expected_descents(std::int64_t n, double theta);
double p_first_gt(std::int64_t n, double theta, std::int64_t k);
double p_first_eq(std::int64_t n, double theta, std::int64_t k);
double expected_first(std::int64_t n, double theta);
double p_inv_at(std::int64_t n, double theta, std::int64_t j, std::int64_t k);
double expected_inversions(std::int64_t n, double theta);

// --- misprediction expectations and bounds (1-bit predictor model) ---
// expected_nu3 / expected_nu8 require an even number of processed
// elements; odd n is evaluated at n-1 (the paired prefix).

double expected_mu6(std::int64_t n, double theta);
double mu4_bound(std::int64_t n, double theta);
double expected_nu3(std::int64_t n, double theta);
double nu7_bound(std::int64_t n, double theta);
double expected_nu8(std::int64_t n, double theta);

// --- asymptotic equivalents ---

enum class Statistic {
  rec,
  desc,
  first,
  inv,
  mu6,
  nu3,
  nu8,
  nu_total,
  mu_total,
};

Statistic statistic_from_name(const std::string& name);
std::string statistic_name(Statistic s);

struct UnsupportedRegime : std::domain_error {
  using std::domain_error::domain_error;
};

// Leading-order value of the statistic at size n when theta follows
// `spec`.  Logarithmic-scale statistics keep their O(1) term so the
// value is usable at moderate n.  Throws UnsupportedRegime for
// (statistic, regime) pairs without a known equivalent.
double asymptotic_eval(Statistic stat, const ThetaSpec& spec, std::int64_t n);

// Per-element misprediction rates at theta = lambda * n, n -> infinity.
double mu_per_element(double lambda);   // naive min/max (mu6 dominates)
double nu_per_element(double lambda);   // 3/2 min/max, all three sites

// Smallest lambda at which 3/2 min/max becomes at least as cheap as the
// naive scan when one misprediction costs `cost` comparisons.  cost = 0
// compares misprediction rates alone.  Empty when the 3/2 variant is
// cheaper for every lambda (this happens for 0 < cost <= 2: the n/2
// saved comparisons always win).
std::optional<double> crossover_lambda(double cost_per_misprediction);

}  // namespace ewens::analytics
