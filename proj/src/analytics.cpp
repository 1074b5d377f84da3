#include "ewens/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace ewens::analytics {
namespace {

constexpr std::int64_t kDirectSumLimit = 1000000;

// Kahan-compensated sum of 1/(x+i), i = 0..n-1, in long double.
long double delta_direct(long double x, std::int64_t n) {
  long double sum = 0.0L, c = 0.0L;
  for (std::int64_t i = 0; i < n; ++i) {
    const long double term = 1.0L / (x + static_cast<long double>(i));
    const long double y = term - c;
    const long double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

long double delta_ld(long double x, std::int64_t n) {
  if (n <= kDirectSumLimit) return delta_direct(x, n);
  return static_cast<long double>(digamma(static_cast<double>(x) +
                                          static_cast<double>(n)) -
                                  digamma(static_cast<double>(x)));
}

// Delta((t+1)/2, m) - Delta(t/2, m), summed termwise so the two nearly
// equal sums never cancel:
// 1/((t+1)/2+i) - 1/(t/2+i) = -(1/2) / (((t+1)/2+i)(t/2+i)).
long double delta_diff_half(long double t, std::int64_t m) {
  long double sum = 0.0L, c = 0.0L;
  const long double a0 = (t + 1.0L) / 2.0L;
  const long double b0 = t / 2.0L;
  for (std::int64_t i = 0; i < m; ++i) {
    const long double fi = static_cast<long double>(i);
    const long double term = -0.5L / ((a0 + fi) * (b0 + fi));
    const long double y = term - c;
    const long double s = sum + y;
    c = (s - sum) - y;
    sum = s;
  }
  return sum;
}

void require_theta(double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
}

void require_n(std::int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
}

}  // namespace

double rising_factorial_log(double x, std::int64_t n) {
  if (!(x > 0)) throw std::domain_error("rising factorial needs x > 0");
  if (n < 0) throw std::domain_error("rising factorial needs n >= 0");
  if (n == 0) return 0.0;
  if (n <= 256) {
    long double sum = 0.0L;
    for (std::int64_t i = 0; i < n; ++i)
      sum += std::log(static_cast<long double>(x) + i);
    return static_cast<double>(sum);
  }
  return std::lgamma(x + static_cast<double>(n)) - std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0)) throw std::domain_error("digamma needs x > 0");
  double result = 0.0;
  // shift into the asymptotic range
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Psi(x) ~ log x - 1/(2x) - sum B_2k / (2k x^2k); at x >= 10 the
  // truncation error is far below 1e-12.
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  series = inv2 * (1.0 / 12 -
           inv2 * (1.0 / 120 -
           inv2 * (1.0 / 252 -
           inv2 * (1.0 / 240 -
           inv2 * (1.0 / 132 -
           inv2 * (691.0 / 32760 -
           inv2 * (1.0 / 12)))))));
  return result + std::log(x) - 0.5 / x - series;
}

double delta(double x, std::int64_t n) {
  if (!(x > 0)) throw std::domain_error("delta needs x > 0");
  if (n < 0) throw std::domain_error("delta needs n >= 0");
  return static_cast<double>(delta_ld(x, n));
}

double p_record_at(std::int64_t n, double theta, std::int64_t i) {
  require_theta(theta);
  if (i < 1 || i > n) throw std::domain_error("position out of range");
  return theta / (theta + static_cast<double>(i - 1));
}

double expected_records(std::int64_t n, double theta) {
  require_theta(theta);
  require_n(n);
  return static_cast<double>(theta * delta_ld(theta, n));
}

double p_descent_at(std::int64_t n, double theta, std::int64_t i) {
  require_theta(theta);
  if (i < 2 || i > n) throw std::domain_error("position out of range");
  const double fi = static_cast<double>(i);
  return (fi - 1) * (2 * theta + fi - 2) /
         (2 * (theta + fi - 1) * (theta + fi - 2));
}

double expected_descents(std::int64_t n, double theta) {
  require_theta(theta);
  require_n(n);
  const double fn = static_cast<double>(n);
  return fn * (fn - 1) / (2 * (theta + fn - 1));
}

double p_first_gt(std::int64_t n, double theta, std::int64_t k) {
  require_theta(theta);
  require_n(n);
  if (k < 0 || k > n - 1) throw std::domain_error("k out of range");
  const double log_p = std::lgamma(static_cast<double>(n)) -
                       std::lgamma(static_cast<double>(n - k)) +
                       rising_factorial_log(theta, n - k) -
                       rising_factorial_log(theta, n);
  return std::exp(log_p);
}

double p_first_eq(std::int64_t n, double theta, std::int64_t k) {
  require_theta(theta);
  require_n(n);
  if (k < 1 || k > n) throw std::domain_error("k out of range");
  const double log_p = std::lgamma(static_cast<double>(n)) -
                       std::lgamma(static_cast<double>(n - k + 1)) +
                       rising_factorial_log(theta, n - k) + std::log(theta) -
                       rising_factorial_log(theta, n);
  return std::exp(log_p);
}

double expected_first(std::int64_t n, double theta) {
  require_theta(theta);
  require_n(n);
  return (theta + static_cast<double>(n)) / (theta + 1);
}

double p_inv_at(std::int64_t n, double theta, std::int64_t j, std::int64_t k) {
  require_theta(theta);
  if (j < 1 || j > n) throw std::domain_error("j out of range");
  if (k < 0 || k >= j) throw std::domain_error("k out of range");
  const double denom = theta + static_cast<double>(j - 1);
  return k == 0 ? theta / denom : 1.0 / denom;
}

double expected_inversions(std::int64_t n, double theta) {
  require_theta(theta);
  require_n(n);
  const long double fn = static_cast<long double>(n);
  const long double t = theta;
  // large theta makes the two halves cancel almost completely, hence
  // the long double evaluation
  const long double value =
      fn * (fn + 1 - 2 * t) / 4 + t * (t - 1) / 2 * delta_ld(t, n);
  return static_cast<double>(value);
}

double expected_mu6(std::int64_t n, double theta) {
  require_theta(theta);
  if (n < 2) return 0.0;
  const long double t = theta;
  const long double fn = static_cast<long double>(n);
  return static_cast<double>(2 * t * delta_ld(t, n - 1) -
                             (2 * t + 1) * (fn - 1) / (t + fn - 1));
}

double mu4_bound(std::int64_t n, double theta) {
  require_theta(theta);
  if (n < 2) return 0.0;
  return static_cast<double>(2.0L * delta_ld(theta, n));
}

double nu7_bound(std::int64_t n, double theta) {
  require_theta(theta);
  if (n < 2) return 0.0;
  return static_cast<double>(2.0L * delta_ld(theta, n));
}

double expected_nu3(std::int64_t n, double theta) {
  require_theta(theta);
  if (n < 2) return 0.0;
  if (n % 2 != 0) n -= 1;  // pair loop covers the even prefix
  const long double t = theta;
  const long double fn = static_cast<long double>(n);
  const std::int64_t m = (n - 2) / 2;
  const long double c = t * t * (t - 1) * (t - 1);
  const long double value =
      (fn - 2) / 4 + t * (t - 1) * (t - 1) / 4 +
      c / 12 *
          (1.0L / (t + fn - 1) - 3.0L / (t + fn - 2) - 1.0L / (t + 1)) +
      c / 6 * delta_diff_half(t, m);
  return static_cast<double>(value);
}

double expected_nu8(std::int64_t n, double theta) {
  require_theta(theta);
  if (n < 2) return 0.0;
  if (n % 2 != 0) n -= 1;
  const long double t = theta;
  const long double fn = static_cast<long double>(n);
  const std::int64_t m = (n - 2) / 2;
  const long double rational =
      (fn - 2) *
      ((2 * t * t * t + t * t - 9 * t - 3) * fn + 2 * t * t * t * t -
       5 * t * t + 9 * t + 3) /
      (3 * (t + fn - 1) * (t + fn - 2));
  // A*D1 - B*D2 with A - B = 2t; rewrite as B*(D1 - D2) + 2t*D1 and
  // compute D1 - D2 termwise, otherwise everything cancels for large
  // theta
  const long double b = t * (2 * t * t * t + t - 3) / 3;
  const long double value = rational + b * delta_diff_half(t, m) +
                            2 * t * delta_ld((t + 1) / 2, m);
  return static_cast<double>(value);
}

Statistic statistic_from_name(const std::string& name) {
  if (name == "rec") return Statistic::rec;
  if (name == "desc") return Statistic::desc;
  if (name == "first") return Statistic::first;
  if (name == "inv") return Statistic::inv;
  if (name == "mu6") return Statistic::mu6;
  if (name == "nu3") return Statistic::nu3;
  if (name == "nu8") return Statistic::nu8;
  if (name == "nu_total") return Statistic::nu_total;
  if (name == "mu_total") return Statistic::mu_total;
  throw std::invalid_argument("unknown statistic: " + name);
}

std::string statistic_name(Statistic s) {
  switch (s) {
    case Statistic::rec: return "rec";
    case Statistic::desc: return "desc";
    case Statistic::first: return "first";
    case Statistic::inv: return "inv";
    case Statistic::mu6: return "mu6";
    case Statistic::nu3: return "nu3";
    case Statistic::nu8: return "nu8";
    case Statistic::nu_total: return "nu_total";
    case Statistic::mu_total: return "mu_total";
  }
  throw std::logic_error("unreachable");
}

double mu_per_element(double lambda) {
  return 2 * lambda * (std::log1p(1.0 / lambda) - 1.0 / (lambda + 1));
}

double nu_per_element(double lambda) {
  const double l = lambda;
  const double cube = (l + 1) * (l + 1) * (l + 1);
  return 2 * l * std::log1p(1.0 / l) -
         (24 * l * l * l + 54 * l * l + 32 * l - 3) / (12 * cube);
}

double asymptotic_eval(Statistic stat, const ThetaSpec& spec, std::int64_t n) {
  require_n(n);
  const double fn = static_cast<double>(n);
  const double v = spec.value;
  const bool fixed = spec.mode == ThetaMode::fixed;
  // theta = n^e splits into the sublinear (e < 1) and superlinear
  // (e > 1) regimes; e = 1 is theta = n, i.e. the linear regime
  const bool power_eps = spec.mode == ThetaMode::power && v < 1;
  const bool power_delta = spec.mode == ThetaMode::power && v > 1;
  const bool linear = spec.mode == ThetaMode::linear ||
                      (spec.mode == ThetaMode::power && v == 1);
  const double lambda = spec.mode == ThetaMode::linear ? v : 1.0;

  switch (stat) {
    case Statistic::rec:
      // log-scale growth: keep the O(1) term so moderate n is usable
      if (fixed) return v * (std::log(fn) - digamma(v));
      if (power_eps) return (1 - v) * std::pow(fn, v) * std::log(fn);
      if (linear) return lambda * std::log1p(1.0 / lambda) * fn;
      if (power_delta) return fn;
      break;
    case Statistic::desc:
      if (fixed || power_eps) return fn / 2;
      if (linear) return fn / (2 * (lambda + 1));
      if (power_delta) return std::pow(fn, 2 - v) / 2;
      break;
    case Statistic::first:
      if (fixed) return fn / (v + 1);
      if (power_eps) return std::pow(fn, 1 - v);
      if (linear) return (lambda + 1) / lambda;
      if (power_delta) return 1.0;
      break;
    case Statistic::inv:
      if (fixed || power_eps) return fn * fn / 4;
      if (linear) {
        const double f =
            1 - 2 * lambda + 2 * lambda * lambda * std::log1p(1.0 / lambda);
        return fn * fn / 4 * f;
      }
      if (power_delta) return std::pow(fn, 3 - v) / 6;
      break;
    case Statistic::mu6:
    case Statistic::mu_total:
      if (fixed) return 2 * v * std::log(fn);
      if (power_eps) return 2 * (1 - v) * std::pow(fn, v) * std::log(fn);
      if (linear) return mu_per_element(lambda) * fn;
      break;
    case Statistic::nu3:
      if (linear) {
        const double l = lambda;
        const double cube = (l + 1) * (l + 1) * (l + 1);
        return (6 * l * l + 8 * l + 3) / (12 * cube) * fn;
      }
      break;
    case Statistic::nu8:
      if (linear) {
        const double l = lambda;
        const double cube = (l + 1) * (l + 1) * (l + 1);
        return (2 * l * std::log1p(1.0 / l) -
                l * (6 * l * l + 15 * l + 10) / (3 * cube)) *
               fn;
      }
      break;
    case Statistic::nu_total:
      if (linear) return nu_per_element(lambda) * fn;
      break;
  }
  throw UnsupportedRegime("no asymptotic for statistic '" +
                          statistic_name(stat) + "' in regime theta = " +
                          spec.describe());
}

std::optional<double> crossover_lambda(double cost_per_misprediction) {
  if (cost_per_misprediction < 0)
    throw std::domain_error("misprediction cost must be >= 0");
  const double c = cost_per_misprediction;
  // cost 0 compares misprediction rates; otherwise compare the full
  // per-element costs 2 + c*mu vs 3/2 + c*nu
  const auto gap = [c](double lambda) {
    const double d = mu_per_element(lambda) - nu_per_element(lambda);
    return c == 0 ? d : 0.5 + c * d;
  };
  double lo = 1e-6, hi = 10.0;
  if (!(gap(lo) < 0 && gap(hi) > 0)) return std::nullopt;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ewens::analytics
