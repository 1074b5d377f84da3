#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "ewens/analytics.hpp"
#include "ewens/perm.hpp"
#include "ewens/rng.hpp"
#include "ewens/stats.hpp"

using namespace ewens;

namespace {

std::uint64_t brute_force_inv(const std::vector<Value>& w) {
  std::uint64_t inv = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inv;
  return inv;
}

Index m_rec_of(const std::vector<Value>& values) {
  return compute_stats(normalize({values})).m_rec;
}

std::vector<Value> random_distinct(RngStream& rng, Index n, Value offset) {
  std::vector<Value> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), static_cast<Value>(offset + 1));
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.next_below(i)]);
  return v;
}

}  // namespace

TEST_CASE("worked example statistics") {
  const StatReport r = compute_stats(Permutation({3, 2, 6, 4, 1, 7, 5}));
  CHECK(r.n == 7);
  CHECK(r.rec == 3);
  CHECK(r.record_positions == std::vector<Index>{1, 3, 6});
  // descents at 3>2, 6>4, 4>1, 7>5
  CHECK(r.desc == 4);
  CHECK(r.inv == 8);
  CHECK(r.first == 3);
  CHECK(r.m_rec == 4);
  CHECK(r.min_rec == 3);  // 3, 2, 1
  CHECK(std::accumulate(r.inv_profile.begin(), r.inv_profile.end(), Index{0}) ==
        static_cast<Index>(r.inv));
}

TEST_CASE("sorted and reverse words") {
  const Index n = 9;
  std::vector<Value> up(static_cast<std::size_t>(n));
  std::iota(up.begin(), up.end(), Value{1});
  const StatReport s = compute_stats(Permutation(up));
  CHECK(s.rec == n);
  CHECK(s.desc == 0);
  CHECK(s.inv == 0);
  CHECK(s.m_rec == 0);

  std::vector<Value> down(up.rbegin(), up.rend());
  const StatReport t = compute_stats(Permutation(down));
  CHECK(t.rec == 1);
  CHECK(t.desc == n - 1);
  CHECK(t.inv == static_cast<std::uint64_t>(n * (n - 1) / 2));
}

TEST_CASE("inversion counter against quadratic oracle") {
  RngStream rng(4242);
  for (Index n : {1, 2, 3, 17, 64, 200}) {
    const auto w = random_distinct(rng, n, 0);
    const StatReport r = compute_stats(Permutation(w));
    CHECK(r.inv == brute_force_inv(w));
    CHECK(std::accumulate(r.inv_profile.begin(), r.inv_profile.end(),
                          Index{0}) == static_cast<Index>(r.inv));
  }
}

TEST_CASE("log_weight") {
  CHECK(log_weight(Permutation({1, 2, 3}), 2.0) ==
        doctest::Approx(std::log(8.0)).epsilon(1e-12));
  CHECK(log_weight(Permutation({2, 3, 1}), 1.0) == 0.0);
  CHECK(log_weight(Permutation({3, 2, 1}), 5.0) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log_weight(Permutation({1}), 0.0), std::domain_error);
}

TEST_CASE("weight_prime examples") {
  const DistinctSequence s{{6, 4, 8, 9}};
  CHECK(weight_prime(s, 9, 3.0) ==
        doctest::Approx(2 * std::log(3.0)).epsilon(1e-12));
  CHECK(weight_prime(s, 10, 3.0) == doctest::Approx(0.0));
  const Permutation p({2, 1, 3, 4});
  CHECK(weight_prime({p.word()}, 4, 2.5) ==
        doctest::Approx(log_weight(p, 2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(weight_prime({{11}}, 9, 1.0), std::domain_error);
}

TEST_CASE("weight splits multiplicatively over prefix/suffix") {
  const double theta = 2.0;
  for (Index n = 2; n <= 7; ++n) {
    std::vector<Value> word(static_cast<std::size_t>(n));
    std::iota(word.begin(), word.end(), Value{1});
    do {
      const Permutation p = Permutation::unchecked(word);
      const double whole = log_weight(p, theta);
      for (Index cut = 1; cut < n; ++cut) {
        const DistinctSequence prefix{
            {word.begin(), word.begin() + static_cast<std::ptrdiff_t>(cut)}};
        const DistinctSequence suffix{
            {word.begin() + static_cast<std::ptrdiff_t>(cut), word.end()}};
        const double split = log_weight(normalize(prefix), theta) +
                             weight_prime(suffix, n, theta);
        CHECK(whole == doctest::Approx(split).epsilon(1e-12));
      }
    } while (std::next_permutation(word.begin(), word.end()));
  }
}

TEST_CASE("normalization constant") {
  for (double theta : {0.5, 1.0, 2.0, 5.0}) {
    for (Index n = 1; n <= 6; ++n) {
      std::vector<Value> word(static_cast<std::size_t>(n));
      std::iota(word.begin(), word.end(), Value{1});
      long double sum = 0.0L;
      do {
        sum += std::exp(static_cast<long double>(
            log_weight(Permutation::unchecked(word), theta)));
      } while (std::next_permutation(word.begin(), word.end()));
      const double exact = std::exp(analytics::rising_factorial_log(theta, n));
      CHECK(static_cast<double>(sum) ==
            doctest::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("m_rec presortedness axioms, randomized") {
  RngStream rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = static_cast<Index>(2 + rng.next_below(20));
    const auto x = random_distinct(rng, n, 0);

    // monotone under subsequence
    std::vector<Value> sub;
    for (Value v : x)
      if (rng.next_below(2) == 0) sub.push_back(v);
    if (!sub.empty()) CHECK(m_rec_of(sub) <= m_rec_of(x));

    // subadditive under ordered concatenation (all of x below all of y)
    const auto y = random_distinct(
        rng, static_cast<Index>(1 + rng.next_below(10)),
        static_cast<Value>(n));
    std::vector<Value> xy(x);
    xy.insert(xy.end(), y.begin(), y.end());
    CHECK(m_rec_of(xy) <= m_rec_of(x) + m_rec_of(y));

    // prepending one element adds at most |x| non-records
    std::vector<Value> ax(x);
    for (Value& v : ax) ++v;  // make room for a new smallest element
    ax.insert(ax.begin(), 1);
    CHECK(m_rec_of(ax) <= static_cast<Index>(x.size()) + m_rec_of(x));
  }
}

TEST_CASE("report serialization") {
  const StatReport r = compute_stats(Permutation({2, 1, 3}));
  CHECK(stat_report_csv(r) == "3,2,2,1,1,2,1");
  CHECK(std::string(kStatReportCsvHeader) ==
        "n,rec,min_rec,desc,inv,first,m_rec");
  CHECK(stat_report_json(r).find("\"rec\":2") != std::string::npos);
}
