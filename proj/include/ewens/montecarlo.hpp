#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ewens/algorithms.hpp"
#include "ewens/perm.hpp"
#include "ewens/stats.hpp"

namespace ewens::montecarlo {

// Statistics the estimator understands.  The first group is read off
// the sampled permutation, the second from instrumented algorithm runs
// (swaps/comparisons: insertion sort; mu: naive min/max; nu: 3/2
// min/max in analysis mode).
inline const std::vector<std::string> kEstimableStatistics = {
    "rec", "desc", "first", "inv",  "swaps", "comparisons",
    "mu4", "mu6",  "nu3",   "nu7",  "nu8"};

struct EstimateReport {
  std::string statistic;
  Index n = 0;
  double theta = 0;
  std::uint64_t trials = 0;
  double mean = 0;
  double stderr_ = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  std::optional<double> analytic;
  std::optional<double> z_score;
};

std::string estimate_report_json(const EstimateReport& r);

// Monte Carlo estimate over `trials` record-biased samples; trial t
// always uses RngStream(seed, t), so the result is reproducible and
// independent of the worker count.  threads = 1 forces the serial
// reference loop, 0 uses the OpenMP default.
EstimateReport estimate(const std::string& statistic, Index n, double theta,
                        std::uint64_t trials, std::uint64_t seed,
                        int threads = 0);

// Same trials, several statistics per sample (cheaper than separate
// estimate calls: one permutation per trial feeds every extractor).
std::vector<EstimateReport> estimate_many(
    const std::vector<std::string>& statistics, Index n, double theta,
    std::uint64_t trials, std::uint64_t seed, int threads = 0);

// Exact weighted expectation by n! enumeration; the oracle behind the
// small-n validation suite.  Guarded at n <= 7 (n <= 6 for nu
// statistics so the pair loop has at least two executed pairs).
double exhaustive_expectation(const std::string& statistic, Index n,
                              double theta);

// Mean instrumentation counters over sampled inputs, for the simulate
// command.
struct SimulationSummary {
  std::string algorithm;
  std::string mode;
  Index n = 0;
  double theta = 0;
  std::uint64_t trials = 0;
  double comparisons = 0;
  double swaps = 0;
  double mu4 = 0, mu6 = 0, nu3 = 0, nu7 = 0, nu8 = 0;
};

SimulationSummary simulate(const std::string& algorithm,
                           const std::string& mode, Index n, double theta,
                           std::uint64_t trials, std::uint64_t seed,
                           int threads = 0);

std::string simulation_csv(const SimulationSummary& s);
std::string simulation_json(const SimulationSummary& s);
inline const char* kSimulationCsvHeader =
    "n,theta,algorithm,mode,comparisons,swaps,mu4,mu6,nu3,nu7,nu8";

// counts[(i-1)*n + (j-1)] = #{samples : sigma(i) = j}; every row and
// column sums to `samples`.
struct HeatmapMatrix {
  Index n = 0;
  double theta = 0;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(Index i, Index j) const {
    return counts[static_cast<std::size_t>((i - 1) * n + (j - 1))];
  }
};

HeatmapMatrix heatmap(Index n, double theta, std::uint64_t samples,
                      std::uint64_t seed, int threads = 0);

std::string heatmap_csv(const HeatmapMatrix& m);
// 8-bit binary PGM (P5), counts scaled linearly so the max count maps
// to 255.
std::string heatmap_pgm(const HeatmapMatrix& m);

// Upper-tail p-value of a chi-square statistic (regularized incomplete
// gamma Q(dof/2, x/2)).
double chi_square_pvalue(double chi2, std::int64_t dof);

// Weighted mean of an arbitrary per-permutation functional over S_n by
// full enumeration; the generic form of the small-n oracle.  Guarded
// at n <= 8.
template <typename F>
double exhaustive_mean(Index n, double theta, F&& stat) {
  if (n < 1 || n > 8)
    throw std::domain_error("exhaustive enumeration guarded at n <= 8");
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  long double weighted = 0.0L;
  long double total = 0.0L;
  std::vector<Value> word(static_cast<std::size_t>(n));
  std::iota(word.begin(), word.end(), Value{1});
  do {
    const Permutation p = Permutation::unchecked(word);
    const long double w =
        std::pow(static_cast<long double>(theta),
                 static_cast<long double>(count_records(p.word())));
    weighted += w * static_cast<long double>(stat(p));
    total += w;
  } while (std::next_permutation(word.begin(), word.end()));
  return static_cast<double>(weighted / total);
}

// Order-independent reduction used by all aggregators.
double pairwise_sum(std::span<const double> values);

}  // namespace ewens::montecarlo
