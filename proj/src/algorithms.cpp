#include "ewens/algorithms.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace ewens {
namespace {

std::uint64_t fnv1a(std::span<const Value> data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Value v : data) {
    auto u = static_cast<std::uint32_t>(v);
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (u >> shift) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace

std::string report_json(const InstrumentationReport& r,
                        const std::string& algorithm,
                        const std::string& mode) {
  nlohmann::json j{{"algorithm", algorithm},
                   {"comparisons", r.comparisons},
                   {"swaps", r.swaps},
                   {"mispredictions",
                    {{"L4_min", r.mu4},
                     {"L6_max", r.mu6},
                     {"L3_pair", r.nu3},
                     {"L7_min", r.nu7},
                     {"L8_max", r.nu8}}},
                   {"result_min", r.result_min},
                   {"result_max", r.result_max},
                   {"checksum", r.checksum},
                   {"odd_tail", r.odd_tail}};
  if (!mode.empty()) j["mode"] = mode;
  return j.dump();
}

InstrumentationReport insertion_sort_instrumented(std::span<const Value> a) {
  InstrumentationReport r;
  std::vector<Value> v(a.begin(), a.end());
  const std::size_t n = v.size();
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = i;
    while (j > 0) {
      ++r.comparisons;
      if (v[j - 1] <= v[j]) break;
      std::swap(v[j - 1], v[j]);
      ++r.swaps;
      --j;
    }
  }
  if (n > 0) {
    r.result_min = v.front();
    r.result_max = v.back();
  }
  r.checksum = fnv1a(v);
  return r;
}

InstrumentationReport naive_minmax_instrumented(std::span<const Value> a) {
  if (a.empty()) throw std::domain_error("array must be nonempty");
  InstrumentationReport r;
  Value min = a[0];
  Value max = a[0];
  // L4 predicts "not a new min" (min-records are rare under record
  // bias), L6 predicts "new max"; this static choice is what makes the
  // closed forms and the mu4 <= 2*Delta(theta, n) bound hold exactly
  OneBitPredictor p_min{false};  // L4
  OneBitPredictor p_max;         // L6
  for (std::size_t i = 1; i < a.size(); ++i) {
    ++r.comparisons;
    const bool is_min = a[i] < min;
    if (p_min.mispredicted(is_min)) ++r.mu4;
    if (is_min) min = a[i];
    ++r.comparisons;
    const bool is_max = a[i] > max;
    if (p_max.mispredicted(is_max)) ++r.mu6;
    if (is_max) max = a[i];
  }
  r.result_min = min;
  r.result_max = max;
  return r;
}

InstrumentationReport minmax32_instrumented(std::span<const Value> a,
                                            MinMaxMode mode) {
  const std::size_t n = a.size();
  if (n < 2) throw std::domain_error("3/2 min/max needs n >= 2");
  InstrumentationReport r;
  const std::size_t paired = n - (n % 2);

  OneBitPredictor p_pair;  // L3
  OneBitPredictor p_min;   // L7
  OneBitPredictor p_max;   // L8

  Value min, max;
  std::size_t start;
  if (mode == MinMaxMode::as_written) {
    min = max = a[n - 1];
    start = 0;
  } else {
    // first pair seeds min/max directly; its pair test executes but
    // only warms the predictor
    ++r.comparisons;
    const bool asc = a[0] < a[1];
    p_pair.warm(asc);
    min = asc ? a[0] : a[1];
    max = asc ? a[1] : a[0];
    start = 2;
  }

  bool pair_predictor_warm = mode == MinMaxMode::as_written;
  for (std::size_t i = start; i + 1 < paired; i += 2) {
    ++r.comparisons;
    const bool asc = a[i] < a[i + 1];
    if (pair_predictor_warm) {
      p_pair.warm(asc);
      pair_predictor_warm = false;
    } else if (p_pair.mispredicted(asc)) {
      ++r.nu3;
    }
    const Value pmin = asc ? a[i] : a[i + 1];
    const Value pmax = asc ? a[i + 1] : a[i];
    ++r.comparisons;
    const bool upd_min = pmin < min;
    if (p_min.mispredicted(upd_min)) ++r.nu7;
    if (upd_min) min = pmin;
    ++r.comparisons;
    const bool upd_max = pmax > max;
    if (p_max.mispredicted(upd_max)) ++r.nu8;
    if (upd_max) max = pmax;
  }

  if (paired < n) {
    // unpaired trailing element: two plain comparisons, no predictor
    r.comparisons += 2;
    if (a[n - 1] < min) min = a[n - 1];
    if (a[n - 1] > max) max = a[n - 1];
    r.odd_tail = true;
  }

  r.result_min = min;
  r.result_max = max;
  return r;
}

InstrumentationReport mrec_optimal_sort(std::span<const Value> a) {
  InstrumentationReport r;
  if (a.empty()) return r;
  std::vector<Value> records{a[0]};
  std::vector<Value> rest;
  for (std::size_t i = 1; i < a.size(); ++i) {
    ++r.comparisons;
    if (a[i] > records.back()) {
      records.push_back(a[i]);
    } else {
      rest.push_back(a[i]);
    }
  }
  std::uint64_t sort_comparisons = 0;
  std::sort(rest.begin(), rest.end(), [&sort_comparisons](Value x, Value y) {
    ++sort_comparisons;
    return x < y;
  });
  r.comparisons += sort_comparisons;

  std::vector<Value> out;
  out.reserve(a.size());
  std::size_t i = 0, j = 0;
  while (i < records.size() && j < rest.size()) {
    ++r.comparisons;
    if (rest[j] < records[i]) {
      out.push_back(rest[j++]);
    } else {
      out.push_back(records[i++]);
    }
  }
  out.insert(out.end(), records.begin() + static_cast<std::ptrdiff_t>(i),
             records.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(j),
             rest.end());

  r.result_min = out.front();
  r.result_max = out.back();
  r.checksum = fnv1a(out);
  return r;
}

}  // namespace ewens
