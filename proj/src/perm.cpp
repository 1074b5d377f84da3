#include "ewens/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ewens {

Permutation::Permutation(std::vector<Value> word) : word_(std::move(word)) {
  const auto n = word_.size();
  if (n == 0) throw std::invalid_argument("permutation must be nonempty");
  std::vector<bool> seen(n, false);
  for (Value v : word_) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[v - 1])
      throw std::invalid_argument("word is not a bijection on [n]");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(Index n) {
  std::vector<Value> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), Value{1});
  return unchecked(std::move(w));
}

Permutation Permutation::unchecked(std::vector<Value> word) {
  Permutation p;
  p.word_ = std::move(word);
  return p;
}

Permutation normalize(const DistinctSequence& s) {
  const auto n = s.values.size();
  if (n == 0) throw std::invalid_argument("sequence must be nonempty");
  std::vector<Value> sorted(s.values);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("sequence has duplicate values");
  std::vector<Value> word(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), s.values[i]);
    word[i] = static_cast<Value>(it - sorted.begin()) + 1;
  }
  return Permutation::unchecked(std::move(word));
}

CycleDecomposition to_cycles(const Permutation& p) {
  const Index n = p.size();
  CycleDecomposition d;
  d.n = n;
  std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
  for (Index start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    std::vector<Value> cycle;
    Value cur = static_cast<Value>(start);
    do {
      visited[static_cast<std::size_t>(cur)] = true;
      cycle.push_back(cur);
      cur = p.at(cur);
    } while (cur != start);
    // rotate so the maximum comes first
    auto mx = std::max_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), mx, cycle.end());
    d.cycles.push_back(std::move(cycle));
  }
  std::sort(d.cycles.begin(), d.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return d;
}

Permutation from_cycles(const CycleDecomposition& d) {
  std::vector<Value> word(static_cast<std::size_t>(d.n), 0);
  for (const auto& cycle : d.cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Value from = cycle[i];
      const Value to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > d.n || word[static_cast<std::size_t>(from - 1)])
        throw std::invalid_argument("cycles do not partition [n]");
      word[static_cast<std::size_t>(from - 1)] = to;
    }
  }
  return Permutation(std::move(word));
}

Permutation fundamental_bijection(const Permutation& p) {
  const CycleDecomposition d = to_cycles(p);
  std::vector<Value> word;
  word.reserve(static_cast<std::size_t>(p.size()));
  for (const auto& cycle : d.cycles)
    word.insert(word.end(), cycle.begin(), cycle.end());
  return Permutation::unchecked(std::move(word));
}

Permutation inverse_fundamental_bijection(const Permutation& p) {
  const Index n = p.size();
  CycleDecomposition d;
  d.n = n;
  // records open a new cycle; they arrive in increasing order
  std::vector<Value> cycle;
  Value best = 0;
  for (Index i = 1; i <= n; ++i) {
    const Value v = p.at(i);
    if (v > best) {
      if (!cycle.empty()) d.cycles.push_back(std::move(cycle));
      cycle.clear();
      best = v;
    }
    cycle.push_back(v);
  }
  d.cycles.push_back(std::move(cycle));
  return from_cycles(d);
}

std::string to_text(const Permutation& p) {
  std::ostringstream out;
  for (Index i = 1; i <= p.size(); ++i) {
    if (i > 1) out << ' ';
    out << p.at(i);
  }
  return out.str();
}

std::string to_text(const CycleDecomposition& d) {
  std::ostringstream out;
  for (const auto& cycle : d.cycles) {
    out << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out << ' ';
      out << cycle[i];
    }
    out << ')';
  }
  return out.str();
}

DistinctSequence sequence_from_text(const std::string& line) {
  DistinctSequence s;
  std::istringstream in(line);
  Value v;
  while (in >> v) s.values.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed sequence: " + line);
  return s;
}

Permutation permutation_from_text(const std::string& line) {
  return Permutation(sequence_from_text(line).values);
}

}  // namespace ewens
