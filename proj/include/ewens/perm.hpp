#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ewens {

// Permutation values are 32-bit so that large samples (n in the tens of
// millions) stay memory-friendly.
using Value = std::int32_t;
using Index = std::int64_t;

// A permutation of [n] stored as a word: word[i-1] = sigma(i).
// All positions in the public API are 1-based, matching the usual
// word notation sigma = w1 w2 ... wn.
class Permutation {
 public:
  // Validates that `word` is a bijection on [n]; throws
  // std::invalid_argument otherwise (including n = 0).
  explicit Permutation(std::vector<Value> word);

  static Permutation identity(Index n);

  // Trusted constructor for hot paths that already guarantee validity.
  static Permutation unchecked(std::vector<Value> word);

  Index size() const { return static_cast<Index>(word_.size()); }
  Value at(Index i) const { return word_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<Value>& word() const { return word_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Permutation() = default;
  std::vector<Value> word_;
};

// A sequence of pairwise distinct integers, not necessarily [n].
struct DistinctSequence {
  std::vector<Value> values;
};

// Cycle decomposition in canonical form: every cycle starts with its
// maximum and cycles are sorted by increasing maximum.
struct CycleDecomposition {
  Index n = 0;
  std::vector<std::vector<Value>> cycles;

  friend bool operator==(const CycleDecomposition&,
                         const CycleDecomposition&) = default;
};

// Replaces each value by its rank within the sequence.  Record
// positions are preserved.  Throws on duplicates or empty input.
Permutation normalize(const DistinctSequence& s);

CycleDecomposition to_cycles(const Permutation& p);
Permutation from_cycles(const CycleDecomposition& d);

// F: write the cycles max-first in increasing order of maxima and erase
// the parentheses.  Maps cycle count to record count.
Permutation fundamental_bijection(const Permutation& p);

// F^-1: cut the word before each record; each block is a cycle.
Permutation inverse_fundamental_bijection(const Permutation& p);

// Text forms: whitespace-separated values, one permutation per line;
// cycles as parenthesized groups, e.g. "(3 2)(6 1 4)(7 5)".
std::string to_text(const Permutation& p);
std::string to_text(const CycleDecomposition& d);
Permutation permutation_from_text(const std::string& line);
DistinctSequence sequence_from_text(const std::string& line);

}  // namespace ewens
