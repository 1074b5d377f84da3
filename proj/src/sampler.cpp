#include "ewens/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ewens/analytics.hpp"
#include "ewens/stats.hpp"

namespace ewens {
namespace {

void check_args(Index n, double theta) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
}

// Restaurant phase shared by both samplers: fills sigma and its
// inverse (1-based; index 0 unused).
void restaurant(Index n, double theta, RngStream& rng,
                std::vector<Value>& sigma, std::vector<Value>& inverse) {
  sigma.assign(static_cast<std::size_t>(n) + 1, 0);
  inverse.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    const double p_new = theta / (theta + static_cast<double>(i - 1));
    if (i == 1 || rng.next_double() < p_new) {
      sigma[static_cast<std::size_t>(i)] = static_cast<Value>(i);
      inverse[static_cast<std::size_t>(i)] = static_cast<Value>(i);
    } else {
      // insert i before a uniform j among the seated 1..i-1
      const Value j = static_cast<Value>(
          rng.next_below(static_cast<std::uint64_t>(i - 1)) + 1);
      const Value p = inverse[static_cast<std::size_t>(j)];
      sigma[static_cast<std::size_t>(p)] = static_cast<Value>(i);
      sigma[static_cast<std::size_t>(i)] = j;
      inverse[static_cast<std::size_t>(j)] = static_cast<Value>(i);
      inverse[static_cast<std::size_t>(i)] = p;
    }
  }
}

}  // namespace

Permutation sample_ewens_cycles(Index n, double theta, RngStream& rng) {
  check_args(n, theta);
  std::vector<Value> sigma, inverse;
  restaurant(n, theta, rng, sigma, inverse);
  sigma.erase(sigma.begin());
  return Permutation::unchecked(std::move(sigma));
}

Permutation sample_ewens_records(Index n, double theta, RngStream& rng) {
  check_args(n, theta);
  std::vector<Value> sigma, inverse;
  restaurant(n, theta, rng, sigma, inverse);

  // Write each cycle max-first; cycles with smaller maxima go in front
  // of the ones already written, so walk maxima downward and fill the
  // word from the right.  A cycle (m, sigma(m), ..., sigma^-1(m)) is
  // emitted right-to-left by following the inverse; visited entries
  // are zeroed in sigma.
  std::vector<Value> word(static_cast<std::size_t>(n));
  Index pos = n;  // 1-based fill cursor
  for (Index m = n; m >= 1; --m) {
    if (sigma[static_cast<std::size_t>(m)] == 0) continue;
    Value cur = inverse[static_cast<std::size_t>(m)];
    while (cur != static_cast<Value>(m)) {
      word[static_cast<std::size_t>(pos - 1)] = cur;
      --pos;
      sigma[static_cast<std::size_t>(cur)] = 0;
      cur = inverse[static_cast<std::size_t>(cur)];
    }
    word[static_cast<std::size_t>(pos - 1)] = static_cast<Value>(m);
    --pos;
    sigma[static_cast<std::size_t>(m)] = 0;
  }
  return Permutation::unchecked(std::move(word));
}

std::map<std::vector<Value>, double> exact_distribution(Index n,
                                                        double theta) {
  check_args(n, theta);
  if (n > 8) throw std::domain_error("exact_distribution is guarded at n <= 8");
  const double log_norm = analytics::rising_factorial_log(theta, n);
  std::map<std::vector<Value>, double> dist;
  std::vector<Value> word(static_cast<std::size_t>(n));
  std::iota(word.begin(), word.end(), Value{1});
  do {
    const double lw = static_cast<double>(count_records(word)) *
                      std::log(theta);
    dist.emplace(word, std::exp(lw - log_norm));
  } while (std::next_permutation(word.begin(), word.end()));
  return dist;
}

}  // namespace ewens
