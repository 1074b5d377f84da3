// Benchmark: serial reference loop vs the OpenMP trial pool for the
// Monte Carlo estimator, plus record-sampler scaling.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ewens/montecarlo.hpp"
#include "ewens/rng.hpp"
#include "ewens/sampler.hpp"

using namespace ewens;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  std::cout << "worker pool size: " << max_threads << "\n\n";

  const Index n = 200;
  const double theta = 2.0;
  const std::uint64_t trials = 200000;
  const std::uint64_t seed = 42;

  std::cout << "estimate(rec), n = " << n << ", " << trials << " trials\n";
  auto start = std::chrono::steady_clock::now();
  const auto serial = montecarlo::estimate("rec", n, theta, trials, seed, 1);
  const double t_serial = seconds_since(start);
  std::cout << "  serial reference: " << t_serial << " s (mean "
            << serial.mean << ")\n";

  start = std::chrono::steady_clock::now();
  const auto parallel = montecarlo::estimate("rec", n, theta, trials, seed, 0);
  const double t_parallel = seconds_since(start);
  std::cout << "  worker pool:      " << t_parallel << " s (mean "
            << parallel.mean << ")\n";
  std::cout << "  speedup: " << t_serial / t_parallel << "x, means "
            << (serial.mean == parallel.mean ? "identical" : "DIFFER") << "\n\n";

  std::cout << "sample_ewens_records scaling (median of 5)\n";
  for (Index size : {1000000, 2000000, 4000000, 8000000}) {
    std::vector<double> times;
    for (std::uint64_t t = 0; t < 5; ++t) {
      RngStream rng(seed, t);
      start = std::chrono::steady_clock::now();
      const Permutation p = sample_ewens_records(size, theta, rng);
      times.push_back(seconds_since(start));
      if (p.at(1) == 0) return 1;
    }
    std::sort(times.begin(), times.end());
    std::cout << "  n = " << size << ": " << times[2] << " s\n";
  }
  return 0;
}
