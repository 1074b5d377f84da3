#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(EWENS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/ewens_cli_test_") + name;
}

}  // namespace

TEST_CASE("expect emits exact closed forms") {
  const auto r = run_cli("expect --stat first --n 100 --theta 1");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["exact"].get<double>() == doctest::Approx(50.5));
  CHECK(j["n"] == 100);

  const auto bound = run_cli("expect --stat mu4 --n 50 --theta 2");
  CHECK(bound.exit_code == 0);
  CHECK(nlohmann::json::parse(bound.output).contains("upper_bound"));

  const auto odd = run_cli("expect --stat nu3 --n 7 --theta 1");
  CHECK(nlohmann::json::parse(odd.output)["evaluated_at"] == 6);
}

TEST_CASE("crossover reports the zero-cost root") {
  const auto r = run_cli("crossover --cost 0");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["lambda0"].get<double>() == doctest::Approx(0.30516).epsilon(1e-3));

  const auto none = run_cli("crossover --cost 1");
  CHECK(none.exit_code == 0);
  CHECK(nlohmann::json::parse(none.output)["lambda0"].is_null());

  const auto table_path = temp_path("crossover.csv");
  const auto t = run_cli("crossover --cost 4 --table " + table_path);
  CHECK(t.exit_code == 0);
  std::ifstream table(table_path);
  std::string header;
  std::getline(table, header);
  CHECK(header == "lambda,mu_per_element,nu_per_element");
  int rows = 0;
  for (std::string line; std::getline(table, line);) ++rows;
  CHECK(rows == 200);
  std::remove(table_path.c_str());
}

TEST_CASE("sample | stats round trip") {
  const auto sample_path = temp_path("sample.txt");
  const auto s = run_cli("sample --n 6 --theta 2 --count 5 --seed 7 -o " +
                         sample_path);
  CHECK(s.exit_code == 0);

  const auto t = run_cli("stats --format csv -i " + sample_path);
  CHECK(t.exit_code == 0);
  int lines = 0;
  for (std::size_t pos = 0; (pos = t.output.find('\n', pos)) !=
                            std::string::npos;
       ++pos)
    ++lines;
  CHECK(lines == 6);  // header + 5 rows
  CHECK(t.output.rfind("n,rec,", 0) == 0);
  std::remove(sample_path.c_str());

  // identical seed reproduces identical output
  const auto a = run_cli("sample --n 6 --theta 2 --count 5 --seed 7");
  const auto b = run_cli("sample --n 6 --theta 2 --count 5 --seed 7");
  CHECK(a.output == b.output);
}

TEST_CASE("validate runs the identity suite") {
  const auto r = run_cli("validate --n 5 --theta 2 --mc-trials 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("simulate emits csv rows") {
  const auto r = run_cli(
      "simulate --algorithm minmax32 --mode analysis_model --n 10 --theta 1 "
      "--trials 200 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("n,theta,algorithm,mode,", 0) == 0);
  CHECK(r.output.find("minmax32,analysis_model") != std::string::npos);
}

TEST_CASE("heatmap pgm output") {
  const auto path = temp_path("heat.pgm");
  const auto r = run_cli("heatmap --n 8 --theta 2 --samples 50 --format pgm -o " +
                         path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  in >> magic;
  CHECK(magic == "P5");
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("expect --stat first --n 10").exit_code == 2);  // no theta
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("sample --n 5 --theta 1 --theta-linear 1").exit_code == 2);
}
