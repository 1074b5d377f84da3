#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ewens/perm.hpp"

namespace ewens {

// 1-bit branch predictor: predicts that a test repeats its last
// outcome.
struct OneBitPredictor {
  bool state = true;

  // True when `outcome` differs from the prediction; always updates.
  bool mispredicted(bool outcome) {
    const bool miss = state != outcome;
    state = outcome;
    return miss;
  }

  void warm(bool outcome) { state = outcome; }
};

enum class MinMaxMode { as_written, analysis_model };

// Per-run counters.  Misprediction counters are named after the branch
// sites: mu4/mu6 for the min/max tests of the naive scan, nu3/nu7/nu8
// for the pair, min and max tests of the 3/2 variant.
struct InstrumentationReport {
  std::uint64_t comparisons = 0;
  std::uint64_t swaps = 0;
  std::uint64_t mu4 = 0;
  std::uint64_t mu6 = 0;
  std::uint64_t nu3 = 0;
  std::uint64_t nu7 = 0;
  std::uint64_t nu8 = 0;
  Value result_min = 0;
  Value result_max = 0;
  std::uint64_t checksum = 0;  // FNV-1a over the sorted output
  bool odd_tail = false;  // odd n: trailing element handled outside the
                          // pair loop, excluded from nu counters
};

std::string report_json(const InstrumentationReport& r,
                        const std::string& algorithm,
                        const std::string& mode = "");

// Sorts a copy of `a`; swaps equals the inversion count of the input
// and inv <= comparisons <= inv + n - 1.
InstrumentationReport insertion_sort_instrumented(std::span<const Value> a);

// One pass, exactly 2n - 2 comparisons.  The max-test predictor (L6)
// starts TRUE, the min-test predictor (L4) starts FALSE: each site is
// statically predicted to its likely outcome under record bias.
InstrumentationReport naive_minmax_instrumented(std::span<const Value> a);

// Pairwise min/max scan.  analysis_model seeds min/max from the first
// pair (prefix semantics, matches the closed forms); as_written seeds
// from T[n] as in the pseudocode.  The pair-test predictor is
// warm-started on its first execution.
InstrumentationReport minmax32_instrumented(std::span<const Value> a,
                                            MinMaxMode mode);

// Records to one list, non-records to another, sort the non-records,
// merge: O(n + k log k) comparisons for k non-records.
InstrumentationReport mrec_optimal_sort(std::span<const Value> a);

}  // namespace ewens
