#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "ewens/analytics.hpp"
#include "ewens/montecarlo.hpp"
#include "ewens/rng.hpp"

using namespace ewens;
using namespace ewens::montecarlo;

TEST_CASE("exhaustive expectation oracle") {
  CHECK(exhaustive_expectation("rec", 3, 1.0) ==
        doctest::Approx(11.0 / 6).epsilon(1e-12));
  CHECK(exhaustive_expectation("inv", 3, 2.0) ==
        doctest::Approx(13.0 / 12).epsilon(1e-12));
  CHECK(exhaustive_expectation("mu6", 3, 2.0) ==
        doctest::Approx(5.0 / 6).epsilon(1e-12));
  CHECK_THROWS_AS(exhaustive_expectation("rec", 8, 1.0), std::domain_error);
  CHECK_THROWS_AS(exhaustive_expectation("nu3", 7, 1.0), std::domain_error);
  CHECK_THROWS_AS(exhaustive_expectation("bogus", 3, 1.0),
                  std::invalid_argument);
}

TEST_CASE("estimate is deterministic and worker-count independent") {
  const auto serial = estimate("rec", 50, 2.0, 5000, 77, 1);
  const auto parallel = estimate("rec", 50, 2.0, 5000, 77, 0);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.stderr_ == parallel.stderr_);
  const auto again = estimate("rec", 50, 2.0, 5000, 77, 3);
  CHECK(serial.mean == again.mean);
}

TEST_CASE("estimate matches closed forms") {
  const auto rec = estimate("rec", 100, 1.0, 20000, 5);
  REQUIRE(rec.analytic.has_value());
  CHECK(*rec.analytic == doctest::Approx(analytics::delta(1.0, 100)));
  REQUIRE(rec.z_score.has_value());
  CHECK(std::abs(*rec.z_score) < 4.0);

  const auto inv = estimate("inv", 10, 1.0, 20000, 6);
  CHECK(*inv.analytic == doctest::Approx(22.5));
  CHECK(std::abs(*inv.z_score) < 4.0);

  const auto first = estimate("first", 100, 100.0, 20000, 7);
  CHECK(*first.analytic == doctest::Approx(200.0 / 101));
  CHECK(std::abs(*first.z_score) < 4.0);

  // bounds-only statistics carry no analytic value
  CHECK(!estimate("mu4", 10, 1.0, 100, 8).analytic.has_value());
}

TEST_CASE("estimate_many shares trials with single estimates") {
  const auto many = estimate_many({"rec", "desc"}, 30, 2.0, 3000, 9);
  CHECK(many[0].mean == estimate("rec", 30, 2.0, 3000, 9).mean);
  CHECK(many[1].mean == estimate("desc", 30, 2.0, 3000, 9).mean);
}

TEST_CASE("simulate summaries") {
  const auto ins = simulate("insertion", "", 20, 1.0, 2000, 10);
  CHECK(ins.swaps == doctest::Approx(estimate("swaps", 20, 1.0, 2000, 10).mean));
  CHECK(ins.comparisons >= ins.swaps);

  const auto mm = simulate("minmax32", "analysis_model", 20, 1.0, 2000, 10);
  CHECK(mm.comparisons == 3 * 20 / 2 - 2);
  CHECK(mm.nu3 > 0);

  const auto mw = simulate("minmax32", "as_written", 20, 1.0, 2000, 10);
  CHECK(mw.nu3 == doctest::Approx(mm.nu3));  // pair site agrees across modes

  const auto ms = simulate("mrec_sort", "", 50, 2.0, 500, 11);
  CHECK(ms.comparisons >= 49.0);
  CHECK_THROWS_AS(simulate("bogus", "", 10, 1.0, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("heatmap marginals") {
  const auto m = heatmap(6, 2.0, 500, 12);
  for (Index i = 1; i <= 6; ++i) {
    std::uint64_t row = 0, col = 0;
    for (Index j = 1; j <= 6; ++j) {
      row += m.at(i, j);
      col += m.at(j, i);
    }
    CHECK(row == 500);
    CHECK(col == 500);
  }

  const auto m2 = heatmap(2, 3.0, 40000, 13);
  CHECK(static_cast<double>(m2.at(1, 1)) / 40000 ==
        doctest::Approx(0.75).epsilon(0.02));

  const auto pgm = heatmap_pgm(m2);
  CHECK(pgm.rfind("P5\n2 2\n255\n", 0) == 0);
  CHECK(pgm.size() == 11 + 4);
  const auto csv = heatmap_csv(m2);
  CHECK(csv == std::to_string(m2.at(1, 1)) + "," + std::to_string(m2.at(1, 2)) +
                   "\n" + std::to_string(m2.at(2, 1)) + "," +
                   std::to_string(m2.at(2, 2)) + "\n");
}

TEST_CASE("chi-square p-values") {
  CHECK(chi_square_pvalue(0.0, 5) == doctest::Approx(1.0));
  // dof = 2: Q = exp(-x/2)
  CHECK(chi_square_pvalue(4.0, 2) == doctest::Approx(std::exp(-2.0)));
  CHECK(chi_square_pvalue(100.0, 5) < 1e-10);
  CHECK_THROWS_AS(chi_square_pvalue(-1.0, 5), std::domain_error);
}

TEST_CASE("pairwise sum") {
  RngStream rng(14);
  std::vector<double> values(10001);
  long double exact = 0.0L;
  for (auto& v : values) {
    v = rng.next_double() - 0.5;
    exact += static_cast<long double>(v);
  }
  CHECK(pairwise_sum(values) ==
        doctest::Approx(static_cast<double>(exact)).epsilon(1e-12));
}

TEST_CASE("report json carries the analytic fields") {
  const auto r = estimate("desc", 12, 1.0, 500, 15);
  const auto j = estimate_report_json(r);
  CHECK(j.find("\"analytic\"") != std::string::npos);
  CHECK(j.find("\"z_score\"") != std::string::npos);
  CHECK(j.find("\"trials\":500") != std::string::npos);
}
