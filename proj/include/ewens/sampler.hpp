#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ewens/perm.hpp"
#include "ewens/rng.hpp"

namespace ewens {

// Chinese-restaurant sampler: P(sigma) = theta^cyc(sigma) / theta^(n),
// O(n) time and space.
Permutation sample_ewens_cycles(Index n, double theta, RngStream& rng);

// Record-biased sampler: P(sigma) = theta^rec(sigma) / theta^(n).
// Runs the cycle sampler, then rewrites the cycles max-first in
// increasing order of maxima in one linear pass.
Permutation sample_ewens_records(Index n, double theta, RngStream& rng);

// Exact law for small n (n! enumeration, guarded at n <= 8).  Keys are
// permutation words; values sum to 1.
std::map<std::vector<Value>, double> exact_distribution(Index n, double theta);

}  // namespace ewens
