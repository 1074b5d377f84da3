#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "ewens/montecarlo.hpp"
#include "ewens/perm.hpp"
#include "ewens/rng.hpp"
#include "ewens/sampler.hpp"
#include "ewens/stats.hpp"

using namespace ewens;

TEST_CASE("exact distribution small cases") {
  const auto d2 = exact_distribution(2, 3.0);
  CHECK(d2.at({1, 2}) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d2.at({2, 1}) == doctest::Approx(0.25).epsilon(1e-12));

  const auto d3u = exact_distribution(3, 1.0);
  for (const auto& [word, p] : d3u) CHECK(p == doctest::Approx(1.0 / 6));

  const auto d3 = exact_distribution(3, 2.0);
  CHECK(d3.at({1, 2, 3}) == doctest::Approx(8.0 / 24));
  CHECK(d3.at({1, 3, 2}) == doctest::Approx(4.0 / 24));
  CHECK(d3.at({2, 1, 3}) == doctest::Approx(4.0 / 24));
  CHECK(d3.at({2, 3, 1}) == doctest::Approx(4.0 / 24));
  CHECK(d3.at({3, 1, 2}) == doctest::Approx(2.0 / 24));
  CHECK(d3.at({3, 2, 1}) == doctest::Approx(2.0 / 24));

  double total = 0;
  for (const auto& [word, p] : exact_distribution(5, 0.7)) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(exact_distribution(9, 1.0), std::domain_error);
}

TEST_CASE("samplers validate arguments and trivial cases") {
  RngStream rng(1);
  CHECK_THROWS_AS(sample_ewens_cycles(0, 1.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_ewens_records(3, 0.0, rng), std::domain_error);
  CHECK(sample_ewens_records(1, 2.0, rng) == Permutation::identity(1));
  CHECK(sample_ewens_cycles(1, 2.0, rng) == Permutation::identity(1));
}

TEST_CASE("record sampler emits valid permutations") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    RngStream rng(5, t);
    const Permutation p = sample_ewens_records(50, 2.0, rng);
    CHECK_NOTHROW(Permutation{p.word()});  // validating constructor
  }
}

TEST_CASE("reproducibility across streams") {
  RngStream a(11, 3), b(11, 3), c(11, 4);
  const auto pa = sample_ewens_records(100, 2.0, a);
  const auto pb = sample_ewens_records(100, 2.0, b);
  const auto pc = sample_ewens_records(100, 2.0, c);
  CHECK(pa == pb);
  CHECK(pa != pc);
}

TEST_CASE("empirical law matches exact distribution, n = 5") {
  const Index n = 5;
  const double theta = 2.0;
  const std::uint64_t trials = 200000;
  const auto exact = exact_distribution(n, theta);
  std::map<std::vector<Value>, std::uint64_t> freq;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(21, t);
    ++freq[sample_ewens_records(n, theta, rng).word()];
  }
  double tv = 0;
  double chi2 = 0;
  for (const auto& [word, p] : exact) {
    const double emp =
        static_cast<double>(freq[word]) / static_cast<double>(trials);
    tv += std::abs(emp - p);
    const double expect = p * static_cast<double>(trials);
    const double diff = static_cast<double>(freq[word]) - expect;
    chi2 += diff * diff / expect;
  }
  tv /= 2;
  CHECK(tv < 0.02);
  CHECK(montecarlo::chi_square_pvalue(
            chi2, static_cast<std::int64_t>(exact.size()) - 1) > 1e-3);
}

TEST_CASE("cycle sampler cycle-count mean") {
  const Index n = 5;
  const double theta = 2.0;
  const std::uint64_t trials = 100000;
  double sum = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(31, t);
    const auto p = sample_ewens_cycles(n, theta, rng);
    sum += static_cast<double>(to_cycles(p).cycles.size());
  }
  const double mean = sum / static_cast<double>(trials);
  const double want = 2 * (1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6);
  CHECK(std::abs(mean - want) < 0.02);
}

TEST_CASE("rec of record sampler distributes as cyc of cycle sampler") {
  const Index n = 1000;
  const double theta = 5.0;
  const std::uint64_t trials = 4000;
  double sum_rec = 0, sum_rec2 = 0, sum_cyc = 0, sum_cyc2 = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream r1(41, t);
    const auto rec = static_cast<double>(
        count_records(sample_ewens_records(n, theta, r1).word()));
    sum_rec += rec;
    sum_rec2 += rec * rec;
    RngStream r2(42, t);
    const auto cyc = static_cast<double>(
        to_cycles(sample_ewens_cycles(n, theta, r2)).cycles.size());
    sum_cyc += cyc;
    sum_cyc2 += cyc * cyc;
  }
  const double ft = static_cast<double>(trials);
  const double mean_rec = sum_rec / ft, mean_cyc = sum_cyc / ft;
  const double var_rec = (sum_rec2 - ft * mean_rec * mean_rec) / (ft - 1);
  const double var_cyc = (sum_cyc2 - ft * mean_cyc * mean_cyc) / (ft - 1);
  const double z =
      (mean_rec - mean_cyc) / std::sqrt((var_rec + var_cyc) / ft);
  CHECK(std::abs(z) < 4.0);
}
