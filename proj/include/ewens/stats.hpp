#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ewens/perm.hpp"

namespace ewens {

// All the per-permutation statistics the analysis needs, collected in a
// single pass (inversions via a Fenwick tree, O(n log n)).
struct StatReport {
  Index n = 0;
  Index rec = 0;      // records (left-to-right maxima)
  Index min_rec = 0;  // min-records (left-to-right minima)
  Index desc = 0;     // descents
  std::uint64_t inv = 0;
  Value first = 0;   // sigma(1)
  Index m_rec = 0;   // n - rec, the presortedness value
  std::vector<Index> record_positions;    // 1-based, increasing
  std::vector<Index> inv_profile;         // entry j-1 = inv_j(sigma)
};

StatReport compute_stats(const Permutation& p);

// Number of records; cheaper than compute_stats when nothing else is
// needed.
Index count_records(const std::vector<Value>& word);

// log of w(sigma) = theta^rec(sigma).  Throws std::domain_error for
// theta <= 0.
double log_weight(const Permutation& p, double theta);

// Lemma-style partial weight w'_n(tau) = theta^m where m counts the
// records of tau larger than the largest element of [n] missing from
// tau.  Values must lie in [n].
double weight_prime(const DistinctSequence& s, Index n, double theta);

// JSON object (field names as in StatReport) and one CSV row with
// column order: n, rec, min_rec, desc, inv, first, m_rec.
std::string stat_report_json(const StatReport& r);
std::string stat_report_csv(const StatReport& r);
inline const char* kStatReportCsvHeader = "n,rec,min_rec,desc,inv,first,m_rec";

}  // namespace ewens
