#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pspec/bigint.hpp"
#include "pspec/core.hpp"

namespace pspec {

// Exact avoider counts alpha_n for n = 0..n_max.
struct CountTable {
  PatternSet pattern_set;
  std::vector<BigInt> counts;

  int n_max() const { return static_cast<int>(counts.size()) - 1; }
  const BigInt& alpha(int n) const { return counts[static_cast<std::size_t>(n)]; }
  double alpha_over_nfact(int n) const { return ratio_to_double(alpha(n), factorial(n)); }
};

// Exhaustive scan of S_n. Capped at n <= 11.
BigInt brute_force_count(const PatternSet& s, int n);

// One level of the pyramid: entry (i1..im) counts avoiders of length n whose
// last m values are i1..im. Dense storage over value tuples in [1..n]^m;
// tuples with repeated values stay 0.
struct PyramidLevel {
  int n = 0;
  int m = 0;
  std::vector<BigInt> table;

  std::size_t index_of(std::span<const int> key) const;
  BigInt sum() const;
};

PyramidLevel pyramid_base_level(const PatternSet& s);
PyramidLevel pyramid_next_level(const PatternSet& s, const PyramidLevel& prev,
                                bool parallel = true);

CountTable pyramid_count(const PatternSet& s, int n_max);
CountTable pyramid_count_serial(const PatternSet& s, int n_max);

struct GrowthEstimate {
  int n;
  double root_est;                  // (alpha_n/n!)^(1/n)
  std::optional<double> ratio_est;  // alpha_{n+1} / ((n+1) alpha_n)
};

// Estimates for n = 1..n_max; ratio absent at n_max and wherever alpha_n = 0.
std::vector<GrowthEstimate> growth_estimates(const CountTable& t);

struct LeadingFit {
  double c;
  double residual;
};

// Least-squares constant c for alpha_n/n! ~ c * lambda^n over n in [n_lo, n_hi].
LeadingFit fit_leading_coefficient(const CountTable& t, double lambda, int n_lo, int n_hi);

void write_counts_csv(std::ostream& os, const CountTable& t);

}  // namespace pspec
