#include "ewens/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace ewens {
namespace {

// Fenwick tree over values 1..n, prefix-sum queries.
class Fenwick {
 public:
  explicit Fenwick(Index n) : tree_(static_cast<std::size_t>(n) + 1, 0) {}

  void add(Index i) {
    for (; i < static_cast<Index>(tree_.size()); i += i & -i) {
      ++tree_[static_cast<std::size_t>(i)];
    }
  }

  Index prefix(Index i) const {
    Index s = 0;
    for (; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
    return s;
  }

 private:
  std::vector<Index> tree_;
};

}  // namespace

StatReport compute_stats(const Permutation& p) {
  const Index n = p.size();
  StatReport r;
  r.n = n;
  r.first = p.at(1);
  r.inv_profile.resize(static_cast<std::size_t>(n));

  Fenwick seen(n);
  Value max_so_far = 0;
  Value min_so_far = static_cast<Value>(n) + 1;
  Value prev = 0;
  for (Index i = 1; i <= n; ++i) {
    const Value v = p.at(i);
    if (v > max_so_far) {
      max_so_far = v;
      ++r.rec;
      r.record_positions.push_back(i);
    }
    if (v < min_so_far) {
      min_so_far = v;
      ++r.min_rec;
    }
    if (i > 1 && prev > v) ++r.desc;
    prev = v;
    // inversions with right endpoint i: values already placed that
    // exceed v
    const Index inv_i = (i - 1) - seen.prefix(v);
    r.inv_profile[static_cast<std::size_t>(i - 1)] = inv_i;
    r.inv += static_cast<std::uint64_t>(inv_i);
    seen.add(v);
  }
  r.m_rec = n - r.rec;
  return r;
}

Index count_records(const std::vector<Value>& word) {
  Index rec = 0;
  Value best = 0;
  for (Value v : word) {
    if (v > best) {
      best = v;
      ++rec;
    }
  }
  return rec;
}

double log_weight(const Permutation& p, double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  return static_cast<double>(count_records(p.word())) * std::log(theta);
}

double weight_prime(const DistinctSequence& s, Index n, double theta) {
  if (!(theta > 0)) throw std::domain_error("theta must be positive");
  if (static_cast<Index>(s.values.size()) > n)
    throw std::domain_error("sequence longer than n");
  std::vector<bool> present(static_cast<std::size_t>(n) + 1, false);
  for (Value v : s.values) {
    if (v < 1 || v > n) throw std::domain_error("value outside [n]");
    if (present[static_cast<std::size_t>(v)])
      throw std::invalid_argument("sequence has duplicate values");
    present[static_cast<std::size_t>(v)] = true;
  }
  Value largest_missing = 0;
  for (Index v = n; v >= 1; --v) {
    if (!present[static_cast<std::size_t>(v)]) {
      largest_missing = static_cast<Value>(v);
      break;
    }
  }
  Index m = 0;
  Value best = 0;
  for (Value v : s.values) {
    if (v > best) {
      best = v;
      if (v > largest_missing) ++m;
    }
  }
  return static_cast<double>(m) * std::log(theta);
}

std::string stat_report_json(const StatReport& r) {
  nlohmann::json j{{"n", r.n},         {"rec", r.rec},
                   {"min_rec", r.min_rec}, {"desc", r.desc},
                   {"inv", r.inv},     {"first", r.first},
                   {"m_rec", r.m_rec}, {"record_positions", r.record_positions},
                   {"inv_profile", r.inv_profile}};
  return j.dump();
}

std::string stat_report_csv(const StatReport& r) {
  return std::to_string(r.n) + "," + std::to_string(r.rec) + "," +
         std::to_string(r.min_rec) + "," + std::to_string(r.desc) + "," +
         std::to_string(r.inv) + "," + std::to_string(r.first) + "," +
         std::to_string(r.m_rec);
}

}  // namespace ewens
