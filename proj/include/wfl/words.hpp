#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wfl/common.hpp"

namespace wfl {

/// One factor x_k^{+1} or x_k^{-1}; variables are 1-based.
struct Letter {
  int var = 1;
  int sign = 1;

  Letter inverse() const { return {var, -sign}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A freely reduced word. Variable indices are kept as given; see normalized().
class ReducedWord {
 public:
  ReducedWord() = default;

  /// Throws InputError if the letters are not freely reduced.
  explicit ReducedWord(std::vector<Letter> letters);

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  /// Number of distinct variables.
  std::size_t distinct_vars() const;
  /// Largest variable index; argument tuples are indexed 1..variable_slots().
  std::size_t variable_slots() const;
  /// d for a normalized word.
  std::size_t arity() const { return variable_slots(); }

  /// 0-based variable slot of position i (iota(i) - 1).
  std::size_t slot(std::size_t i) const { return static_cast<std::size_t>(letters_[i].var - 1); }

  /// Occurrence count a_k per variable, indexed by k-1 over variable_slots().
  std::vector<std::size_t> occurrences() const;

  /// Renames variables to 1..d by first occurrence.
  ReducedWord normalized() const;
  bool is_normalized() const;

  ReducedWord inverse() const;

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

 private:
  std::vector<Letter> letters_;
};

ReducedWord free_reduce(const std::vector<Letter>& letters);

/// Parses the word grammar and returns the normalized free reduction.
ReducedWord parse_word(std::string_view text, bool require_nonempty = false);

/// Canonical text form: space-separated `x<k>` / `x<k>^-1`.
std::string format_word(const ReducedWord& w);

/// M(d,l) = 1 + b + ... + b^{2l+2} with b = 2l(d+1).
BigInt m_constant(std::size_t d, std::size_t l);
inline BigInt m_prime(std::size_t l) { return m_constant(l, l); }

/// Suffix of the last j letters, without renormalization.
ReducedWord terminal_segment(const ReducedWord& w, std::size_t j);

// Variations.

struct PairLetter {
  int var = 1;     // k
  int second = 1;  // t
  int sign = 1;
  friend auto operator<=>(const PairLetter&, const PairLetter&) = default;
};

class VariationWord {
 public:
  explicit VariationWord(std::vector<PairLetter> letters);

  const std::vector<PairLetter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }

  /// The word over fresh variables 1..m, numbered by first occurrence of (k,t).
  const ReducedWord& flattened() const { return flattened_; }
  /// fresh variable index - 1 -> (k, t)
  const std::vector<std::pair<int, int>>& fresh_map() const { return fresh_map_; }

  friend bool operator==(const VariationWord& a, const VariationWord& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::vector<PairLetter> letters_;
  ReducedWord flattened_;
  std::vector<std::pair<int, int>> fresh_map_;
};

/// `X1,2 X2,1 X1,1^-1 X2,1^-1`
std::string format_variation(const VariationWord& v);

/// Enumerates the variations of w in lexicographic order of (t_1,...,t_l).
class VariationEnumerator {
 public:
  explicit VariationEnumerator(const ReducedWord& w);

  /// Next variation, or nullopt when exhausted.
  std::optional<VariationWord> next();

 private:
  const ReducedWord& word_;
  std::vector<std::size_t> counts_;
  std::vector<int> seconds_;
  bool done_ = false;
};

std::vector<VariationWord> variations(const ReducedWord& w);
BigInt variation_count(const ReducedWord& w);
bool is_variation(const VariationWord& candidate, const ReducedWord& w);
/// Substitutes X_k for every X_{k,t}.
ReducedWord project_variation(const VariationWord& v);

}  // namespace wfl
