// Command-line front end: sampling, statistics, closed-form
// expectations, algorithm simulation, exhaustive validation, heatmaps
// and the misprediction crossover analysis.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ewens/algorithms.hpp"
#include "ewens/analytics.hpp"
#include "ewens/montecarlo.hpp"
#include "ewens/perm.hpp"
#include "ewens/rng.hpp"
#include "ewens/sampler.hpp"
#include "ewens/stats.hpp"
#include "ewens/theta.hpp"

namespace {

using namespace ewens;

// Fixed default so every run is reproducible without flags.
constexpr std::uint64_t kDefaultSeed = 123456789;

struct ThetaOptions {
  std::optional<double> fixed;
  std::optional<double> power;
  std::optional<double> linear;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--theta", fixed, "fixed theta > 0");
    auto* b =
        cmd->add_option("--theta-power", power, "theta = n^e for exponent e");
    auto* c =
        cmd->add_option("--theta-linear", linear, "theta = lambda * n");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }

  ThetaSpec spec() const {
    if (fixed) return ThetaSpec::fixed(*fixed);
    if (power) return ThetaSpec::power(*power);
    if (linear) return ThetaSpec::linear(*linear);
    throw CLI::ValidationError(
        "one of --theta / --theta-power / --theta-linear is required");
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file,
                          bool binary = false) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, binary ? std::ios::binary : std::ios::out);
  if (!file) throw CLI::ValidationError("cannot open output file: " + path);
  return file;
}

void write_binary_permutation(std::ostream& out, const Permutation& p) {
  const auto n = static_cast<std::uint64_t>(p.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(p.word().data()),
            static_cast<std::streamsize>(p.word().size() * sizeof(Value)));
}

int run_sample(Index n, const ThetaSpec& spec, std::uint64_t count,
               std::uint64_t seed, const std::string& format,
               const std::string& output) {
  const double theta = spec.resolve(n);
  std::ofstream file;
  std::ostream& out = open_output(output, file, format == "binary");
  for (std::uint64_t t = 0; t < count; ++t) {
    RngStream rng(seed, t);
    const Permutation p = sample_ewens_records(n, theta, rng);
    if (format == "binary") {
      write_binary_permutation(out, p);
    } else {
      out << to_text(p) << '\n';
    }
  }
  return 0;
}

int run_stats(const std::string& input, const std::string& format,
              const std::string& output) {
  std::ifstream in_file;
  std::istream* in = &std::cin;
  if (!input.empty() && input != "-") {
    in_file.open(input);
    if (!in_file) throw CLI::ValidationError("cannot open input: " + input);
    in = &in_file;
  }
  std::ofstream file;
  std::ostream& out = open_output(output, file);
  if (format == "csv") out << kStatReportCsvHeader << '\n';
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty()) continue;
    const Permutation p = normalize(sequence_from_text(line));
    const StatReport r = compute_stats(p);
    out << (format == "csv" ? stat_report_csv(r) : stat_report_json(r))
        << '\n';
  }
  return 0;
}

int run_expect(const std::string& stat, Index n, const ThetaSpec& spec,
               const std::string& output) {
  const double theta = spec.resolve(n);
  nlohmann::json j{{"statistic", stat}, {"n", n}, {"theta", theta}};

  using namespace analytics;
  if (stat == "rec") j["exact"] = expected_records(n, theta);
  else if (stat == "desc") j["exact"] = expected_descents(n, theta);
  else if (stat == "first") j["exact"] = expected_first(n, theta);
  else if (stat == "inv") j["exact"] = expected_inversions(n, theta);
  else if (stat == "mu6") j["exact"] = expected_mu6(n, theta);
  else if (stat == "nu3") j["exact"] = expected_nu3(n, theta);
  else if (stat == "nu8") j["exact"] = expected_nu8(n, theta);
  else if (stat == "mu4") j["upper_bound"] = mu4_bound(n, theta);
  else if (stat == "nu7") j["upper_bound"] = nu7_bound(n, theta);
  else if (stat == "nu_total" || stat == "mu_total") {
    // asymptotic only
  } else {
    throw CLI::ValidationError("unknown statistic: " + stat);
  }
  if ((stat == "nu3" || stat == "nu8") && n % 2 != 0)
    j["evaluated_at"] = n - 1;  // model covers the paired prefix

  if (stat != "mu4" && stat != "nu7") {
    try {
      j["asymptotic"] = asymptotic_eval(statistic_from_name(stat), spec, n);
    } catch (const UnsupportedRegime&) {
    }
  }

  std::ofstream file;
  open_output(output, file) << j.dump() << '\n';
  return 0;
}

int run_simulate(const std::string& algorithm, const std::string& mode,
                 Index n, const ThetaSpec& spec, std::uint64_t trials,
                 std::uint64_t seed, int threads, const std::string& format,
                 const std::string& output) {
  const double theta = spec.resolve(n);
  const auto summary =
      montecarlo::simulate(algorithm, mode, n, theta, trials, seed, threads);
  std::ofstream file;
  std::ostream& out = open_output(output, file);
  if (format == "csv") {
    out << montecarlo::kSimulationCsvHeader << '\n'
        << montecarlo::simulation_csv(summary) << '\n';
  } else {
    out << montecarlo::simulation_json(summary) << '\n';
  }
  return 0;
}

int run_heatmap(Index n, const ThetaSpec& spec, std::uint64_t samples,
                std::uint64_t seed, int threads, const std::string& format,
                const std::string& output) {
  const double theta = spec.resolve(n);
  const auto m = montecarlo::heatmap(n, theta, samples, seed, threads);
  std::ofstream file;
  std::ostream& out = open_output(output, file, format == "pgm");
  out << (format == "pgm" ? montecarlo::heatmap_pgm(m)
                          : montecarlo::heatmap_csv(m));
  return 0;
}

int run_crossover(double cost, const std::string& table,
                  const std::string& output) {
  nlohmann::json j{{"cost", cost}};
  const auto lambda0 = analytics::crossover_lambda(cost);
  if (lambda0) {
    j["lambda0"] = *lambda0;
  } else {
    j["lambda0"] = nullptr;
    j["note"] = "3/2 min/max is cheaper for every lambda at this cost";
  }
  std::ofstream file;
  open_output(output, file) << j.dump() << '\n';

  if (!table.empty()) {
    std::ofstream table_file;
    std::ostream& out = open_output(table, table_file);
    out << "lambda,mu_per_element,nu_per_element\n";
    const double lo = std::log(0.01), hi = std::log(2.0);
    for (int k = 0; k < 200; ++k) {
      const double lambda = std::exp(lo + (hi - lo) * k / 199.0);
      out << lambda << ',' << analytics::mu_per_element(lambda) << ','
          << analytics::nu_per_element(lambda) << '\n';
    }
  }
  return 0;
}

// Exhaustive identities plus a Monte Carlo cross-check; exit 1 when
// anything drifts beyond tolerance.
int run_validate(Index n, const ThetaSpec& spec, std::uint64_t mc_trials,
                 Index mc_n, std::uint64_t seed, int threads) {
  using namespace analytics;
  const double theta = spec.resolve(n);
  bool ok = true;
  const auto check = [&ok](const std::string& label, double err,
                           double tolerance) {
    const bool pass = err < tolerance;
    ok = ok && pass;
    std::cout << (pass ? "ok   " : "FAIL ") << label << "  error=" << err
              << " tolerance=" << tolerance << '\n';
  };

  // normalization constant
  {
    long double total = 0.0L;
    const double exact = std::exp(rising_factorial_log(theta, n));
    total = montecarlo::exhaustive_mean(n, theta, [](const Permutation&) {
      return 1.0;
    });
    // exhaustive_mean normalizes, so recompute the raw sum
    std::vector<Value> word(static_cast<std::size_t>(n));
    std::iota(word.begin(), word.end(), Value{1});
    long double sum = 0.0L;
    do {
      sum += std::pow(static_cast<long double>(theta),
                      static_cast<long double>(count_records(word)));
    } while (std::next_permutation(word.begin(), word.end()));
    check("normalization-constant",
          std::abs(static_cast<double>(sum) - exact) / exact, 1e-10);
    (void)total;
  }

  const auto expect_pair = [&](const std::string& label, double analytic,
                               double enumerated) {
    const double scale = std::max(1.0, std::abs(analytic));
    check(label, std::abs(analytic - enumerated) / scale, 1e-10);
  };

  expect_pair("expected-records", expected_records(n, theta),
              montecarlo::exhaustive_expectation("rec", n, theta));
  expect_pair("expected-descents", expected_descents(n, theta),
              montecarlo::exhaustive_expectation("desc", n, theta));
  expect_pair("expected-first", expected_first(n, theta),
              montecarlo::exhaustive_expectation("first", n, theta));
  expect_pair("expected-inversions", expected_inversions(n, theta),
              montecarlo::exhaustive_expectation("inv", n, theta));
  expect_pair("expected-mu6", expected_mu6(n, theta),
              montecarlo::exhaustive_expectation("mu6", n, theta));
  if (n >= 4 && n % 2 == 0 && n <= 6) {
    expect_pair("expected-nu3", expected_nu3(n, theta),
                montecarlo::exhaustive_expectation("nu3", n, theta));
    expect_pair("expected-nu8", expected_nu8(n, theta),
                montecarlo::exhaustive_expectation("nu8", n, theta));
  }

  for (Index i = 1; i <= n; ++i) {
    const double enumerated =
        montecarlo::exhaustive_mean(n, theta, [i](const Permutation& p) {
          Value best = 0;
          for (Index k = 1; k <= i; ++k) best = std::max(best, p.at(k));
          return best == p.at(i) ? 1.0 : 0.0;
        });
    expect_pair("p-record-at-" + std::to_string(i),
                p_record_at(n, theta, i), enumerated);
  }
  for (Index i = 2; i <= n; ++i) {
    const double enumerated =
        montecarlo::exhaustive_mean(n, theta, [i](const Permutation& p) {
          return p.at(i - 1) > p.at(i) ? 1.0 : 0.0;
        });
    expect_pair("p-descent-at-" + std::to_string(i),
                p_descent_at(n, theta, i), enumerated);
  }
  for (Index k = 1; k <= n; ++k) {
    const double enumerated =
        montecarlo::exhaustive_mean(n, theta, [k](const Permutation& p) {
          return p.at(1) == k ? 1.0 : 0.0;
        });
    expect_pair("p-first-eq-" + std::to_string(k), p_first_eq(n, theta, k),
                enumerated);
  }

  if (mc_trials > 0) {
    for (const std::string stat : {"rec", "desc", "first", "inv"}) {
      const auto report = montecarlo::estimate(stat, mc_n, spec.resolve(mc_n),
                                               mc_trials, seed, threads);
      const bool pass = report.z_score && std::abs(*report.z_score) < 4.0;
      ok = ok && pass;
      std::cout << (pass ? "ok   " : "FAIL ") << "monte-carlo-" << stat
                << "  z=" << report.z_score.value_or(0.0) << '\n';
    }
  }

  std::cout << (ok ? "validate: all checks passed"
                   : "validate: FAILURES detected")
            << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"record-biased permutation toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = library default)");

  // sample
  auto* sample = app.add_subcommand("sample", "emit random permutations");
  Index sample_n = 10;
  std::uint64_t sample_count = 1, sample_seed = kDefaultSeed;
  std::string sample_format = "text", sample_output;
  ThetaOptions sample_theta;
  sample->add_option("--n", sample_n, "permutation size")->required();
  sample_theta.attach(sample);
  sample->add_option("--count", sample_count, "number of permutations");
  sample->add_option("--seed", sample_seed, "RNG seed");
  sample->add_option("--format", sample_format, "text|binary")
      ->check(CLI::IsMember({"text", "binary"}));
  sample->add_option("--output,-o", sample_output, "output path (default -)");

  // stats
  auto* stats = app.add_subcommand("stats", "statistics for input sequences");
  std::string stats_input, stats_format = "json", stats_output;
  stats->add_option("--input,-i", stats_input, "input path (default stdin)");
  stats->add_option("--format", stats_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  stats->add_option("--output,-o", stats_output, "output path (default -)");

  // expect
  auto* expect = app.add_subcommand("expect", "closed-form expectations");
  std::string expect_stat;
  Index expect_n = 0;
  std::string expect_output;
  ThetaOptions expect_theta;
  expect->add_option("--stat", expect_stat, "statistic name")->required();
  expect->add_option("--n", expect_n, "permutation size")->required();
  expect_theta.attach(expect);
  expect->add_option("--output,-o", expect_output, "output path (default -)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "instrumented algorithm runs");
  std::string sim_algorithm, sim_mode = "analysis_model";
  Index sim_n = 0;
  std::uint64_t sim_trials = 1000, sim_seed = kDefaultSeed;
  std::string sim_format = "json", sim_output;
  ThetaOptions sim_theta;
  simulate
      ->add_option("--algorithm", sim_algorithm,
                   "insertion|naive_minmax|minmax32|mrec_sort")
      ->required()
      ->check(CLI::IsMember(
          {"insertion", "naive_minmax", "minmax32", "mrec_sort"}));
  simulate->add_option("--mode", sim_mode, "as_written|analysis_model")
      ->check(CLI::IsMember({"as_written", "analysis_model"}));
  simulate->add_option("--n", sim_n, "input size")->required();
  sim_theta.attach(simulate);
  simulate->add_option("--trials", sim_trials, "number of runs");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("--format", sim_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--output,-o", sim_output, "output path (default -)");

  // validate
  auto* validate = app.add_subcommand("validate", "identity suite");
  Index val_n = 6;
  std::uint64_t val_trials = 20000, val_seed = kDefaultSeed;
  Index val_mc_n = 100;
  ThetaOptions val_theta;
  validate->add_option("--n", val_n, "exhaustive size (<= 7)");
  val_theta.attach(validate);
  validate->add_option("--mc-trials", val_trials,
                       "Monte Carlo cross-check trials (0 = skip)");
  validate->add_option("--mc-n", val_mc_n, "Monte Carlo cross-check size");
  validate->add_option("--seed", val_seed, "RNG seed");

  // heatmap
  auto* heatmap = app.add_subcommand("heatmap", "position/value frequency map");
  Index hm_n = 100;
  std::uint64_t hm_samples = 10000, hm_seed = kDefaultSeed;
  std::string hm_format = "pgm", hm_output;
  ThetaOptions hm_theta;
  heatmap->add_option("--n", hm_n, "permutation size")->required();
  hm_theta.attach(heatmap);
  heatmap->add_option("--samples", hm_samples, "number of samples");
  heatmap->add_option("--seed", hm_seed, "RNG seed");
  heatmap->add_option("--format", hm_format, "csv|pgm")
      ->check(CLI::IsMember({"csv", "pgm"}));
  heatmap->add_option("--output,-o", hm_output, "output path (default -)");

  // crossover
  auto* crossover =
      app.add_subcommand("crossover", "naive vs 3/2 min/max crossover");
  double cx_cost = 0.0;
  std::string cx_table, cx_output;
  crossover->add_option("--cost", cx_cost,
                        "comparisons one misprediction is worth");
  crossover->add_option("--table", cx_table,
                        "also emit a lambda grid CSV to this path");
  crossover->add_option("--output,-o", cx_output, "output path (default -)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample)
      return run_sample(sample_n, sample_theta.spec(), sample_count,
                        sample_seed, sample_format, sample_output);
    if (*stats) return run_stats(stats_input, stats_format, stats_output);
    if (*expect)
      return run_expect(expect_stat, expect_n, expect_theta.spec(),
                        expect_output);
    if (*simulate)
      return run_simulate(sim_algorithm, sim_mode, sim_n, sim_theta.spec(),
                          sim_trials, sim_seed, threads, sim_format,
                          sim_output);
    if (*validate)
      return run_validate(val_n, val_theta.spec(), val_trials, val_mc_n,
                          val_seed, threads);
    if (*heatmap)
      return run_heatmap(hm_n, hm_theta.spec(), hm_samples, hm_seed, threads,
                         hm_format, hm_output);
    if (*crossover) return run_crossover(cx_cost, cx_table, cx_output);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
