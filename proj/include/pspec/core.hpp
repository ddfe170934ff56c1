#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pspec/errors.hpp"

namespace pspec {

// A permutation of {1..k} in one-line notation.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<int> entries);

  // "213" for k <= 9, "10,2,1,..." for k >= 10.
  static Pattern from_string(std::string_view text);

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }
  std::string str() const;

  auto operator<=>(const Pattern&) const = default;

 private:
  std::vector<int> entries_;
};

// Word over {a,b}; letter i records whether position i of a permutation ascends.
class DescentWord {
 public:
  DescentWord() = default;
  explicit DescentWord(std::string letters);

  int size() const { return static_cast<int>(letters_.size()); }
  char operator[](int i) const { return letters_[static_cast<std::size_t>(i)]; }
  const std::string& letters() const { return letters_; }

  auto operator<=>(const DescentWord&) const = default;

 private:
  std::string letters_;
};

// A set of forbidden patterns, all of length m+1 (window order m).
class PatternSet {
 public:
  PatternSet() = default;
  explicit PatternSet(int m) : m_(m) { validate(); }
  PatternSet(int m, std::vector<Pattern> members);

  // "{123,231}"; every member in digit form.
  static PatternSet from_string(std::string_view text);

  int m() const { return m_; }
  int window() const { return m_ + 1; }
  const std::vector<Pattern>& members() const { return members_; }
  bool contains(const Pattern& p) const;
  bool empty() const { return members_.empty(); }
  std::string str() const;

  auto operator<=>(const PatternSet&) const = default;

 private:
  void validate() const;
  int m_ = 1;
  std::vector<Pattern> members_;  // sorted, unique
};

// Rank vector of a tuple of distinct reals. Throws DuplicateValue on ties.
Pattern standardize(std::span<const double> x);

// Indicator of Eq-style window admissibility: 0 on any tie, otherwise
// 1 iff the window's pattern is not forbidden.
int chi(const PatternSet& s, std::span<const double> x);

// True iff no length-(m+1) window of pi realizes a member of s.
bool avoids(const Pattern& pi, const PatternSet& s);

DescentWord descent_word(const Pattern& pi);

// S(U): all permutations of length m+1 whose descent word lies in U.
PatternSet patterns_of_descent_set(const std::vector<DescentWord>& u);

Pattern complement(const Pattern& pi);
Pattern reverse(const Pattern& pi);

// No proper prefix of pi maps onto {1..i}.
bool is_indecomposable(const Pattern& pi);

// All of S_k in lexicographic order.
std::vector<Pattern> all_patterns(int k);

DescentWord descent_word_of_values(std::span<const int> values);

// Rank vector of distinct integers.
Pattern standardize_values(std::span<const int> values);

Pattern monotone_increasing(int k);
Pattern monotone_decreasing(int k);

// Precomputed chi over rank codes of (m+1)-tuples of distinct comparables.
// Tuples with repeated values decode to a non-permutation code and yield 0,
// which matches the tie rule of chi.
class ChiTable {
 public:
  explicit ChiTable(const PatternSet& s);

  int window() const { return k_; }

  template <typename T>
  int operator()(std::span<const T> t) const {
    int code = 0;
    int pw = 1;
    for (int i = 0; i < k_; ++i) {
      int r = 0;
      for (int j = 0; j < k_; ++j) r += t[static_cast<std::size_t>(j)] < t[static_cast<std::size_t>(i)];
      code += r * pw;
      pw *= k_;
    }
    return allowed_[static_cast<std::size_t>(code)];
  }

  int at_code(int code) const { return allowed_[static_cast<std::size_t>(code)]; }

 private:
  int k_;
  std::vector<unsigned char> allowed_;  // indexed by base-k rank codes
};

}  // namespace pspec
