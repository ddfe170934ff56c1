#include "pspec/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pspec {

BigInt brute_force_count(const PatternSet& s, int n) {
  if (n < 0) throw OutOfRange("n must be non-negative");
  if (n > 11) throw TooLarge("brute force capped at n <= 11");
  if (n <= s.m()) return factorial(n);
  const ChiTable table(s);
  const int k = s.window();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  BigInt count = 0;
  do {
    bool ok = true;
    for (int j = 0; j + k <= n && ok; ++j)
      ok = table(std::span<const int>(perm.data() + j, static_cast<std::size_t>(k))) != 0;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::size_t PyramidLevel::index_of(std::span<const int> key) const {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int a = 0; a < m; ++a) {
    idx += static_cast<std::size_t>(key[static_cast<std::size_t>(a)] - 1) * stride;
    stride *= static_cast<std::size_t>(n);
  }
  return idx;
}

BigInt PyramidLevel::sum() const {
  BigInt total = 0;
  for (const BigInt& v : table) total += v;
  return total;
}

PyramidLevel pyramid_base_level(const PatternSet& s) {
  const int m = s.m();
  PyramidLevel level;
  level.n = m;
  level.m = m;
  std::size_t size = 1;
  for (int a = 0; a < m; ++a) size *= static_cast<std::size_t>(m);
  level.table.assign(size, BigInt(0));
  for (const Pattern& p : all_patterns(m)) level.table[level.index_of(p.entries())] = 1;
  return level;
}

namespace {

// Entry for suffix (i1..im) at level n sums the admissible level-(n-1)
// entries: prepend j, keep the window allowed, and relabel by dropping im.
void fill_level(const PatternSet& s, const ChiTable& table, const PyramidLevel& prev,
                PyramidLevel& next, std::int64_t lo, std::int64_t hi) {
  const int m = s.m();
  const int n = next.n;
  std::vector<int> key(static_cast<std::size_t>(m));
  std::vector<int> window(static_cast<std::size_t>(m + 1));
  std::vector<int> prev_key(static_cast<std::size_t>(m));
  for (std::int64_t flat = lo; flat < hi; ++flat) {
    std::int64_t rest = flat;
    bool distinct = true;
    for (int a = 0; a < m; ++a) {
      key[static_cast<std::size_t>(a)] = static_cast<int>(rest % n) + 1;
      rest /= n;
    }
    for (int a = 0; a < m && distinct; ++a)
      for (int b = a + 1; b < m; ++b)
        if (key[static_cast<std::size_t>(a)] == key[static_cast<std::size_t>(b)]) {
          distinct = false;
          break;
        }
    if (!distinct) continue;
    const int last = key[static_cast<std::size_t>(m - 1)];
    std::copy(key.begin(), key.end(), window.begin() + 1);
    BigInt acc = 0;
    for (int j = 1; j <= n; ++j) {
      bool fresh = true;
      for (int a = 0; a < m; ++a)
        if (key[static_cast<std::size_t>(a)] == j) {
          fresh = false;
          break;
        }
      if (!fresh) continue;
      window[0] = j;
      if (!table(std::span<const int>(window))) continue;
      prev_key[0] = j - (j > last);
      for (int a = 0; a + 1 < m; ++a) {
        const int v = key[static_cast<std::size_t>(a)];
        prev_key[static_cast<std::size_t>(a + 1)] = v - (v > last);
      }
      acc += prev.table[prev.index_of(prev_key)];
    }
    next.table[static_cast<std::size_t>(flat)] = std::move(acc);
  }
}

CountTable pyramid_count_impl(const PatternSet& s, int n_max, bool parallel) {
  const int m = s.m();
  if (n_max < m) throw OutOfRange("pyramid requires n_max >= m");
  CountTable t{s, std::vector<BigInt>(static_cast<std::size_t>(n_max) + 1)};
  for (int n = 0; n < m && n <= n_max; ++n) t.counts[static_cast<std::size_t>(n)] = factorial(n);
  PyramidLevel level = pyramid_base_level(s);
  t.counts[static_cast<std::size_t>(m)] = level.sum();
  for (int n = m + 1; n <= n_max; ++n) {
    level = pyramid_next_level(s, level, parallel);
    t.counts[static_cast<std::size_t>(n)] = level.sum();
  }
  return t;
}

}  // namespace

PyramidLevel pyramid_next_level(const PatternSet& s, const PyramidLevel& prev, bool parallel) {
  const int m = s.m();
  PyramidLevel next;
  next.n = prev.n + 1;
  next.m = m;
  std::size_t size = 1;
  for (int a = 0; a < m; ++a) size *= static_cast<std::size_t>(next.n);
  next.table.assign(size, BigInt(0));
  const ChiTable table(s);
  const auto total = static_cast<std::int64_t>(size);
  if (parallel) {
#pragma omp parallel
    {
#ifdef _OPENMP
      const int threads = omp_get_num_threads();
      const int id = omp_get_thread_num();
#else
      const int threads = 1;
      const int id = 0;
#endif
      const std::int64_t chunk = (total + threads - 1) / threads;
      const std::int64_t lo = std::min<std::int64_t>(total, id * chunk);
      const std::int64_t hi = std::min<std::int64_t>(total, lo + chunk);
      fill_level(s, table, prev, next, lo, hi);
    }
  } else {
    fill_level(s, table, prev, next, 0, total);
  }
  return next;
}

CountTable pyramid_count(const PatternSet& s, int n_max) {
  return pyramid_count_impl(s, n_max, true);
}

CountTable pyramid_count_serial(const PatternSet& s, int n_max) {
  return pyramid_count_impl(s, n_max, false);
}

std::vector<GrowthEstimate> growth_estimates(const CountTable& t) {
  if (t.n_max() < t.pattern_set.m() + 2)
    throw TooShort("growth estimates need counts up to n >= m+2");
  std::vector<GrowthEstimate> out;
  for (int n = 1; n <= t.n_max(); ++n) {
    GrowthEstimate g;
    g.n = n;
    g.root_est = std::pow(t.alpha_over_nfact(n), 1.0 / n);
    if (n < t.n_max() && t.alpha(n) != 0)
      g.ratio_est = ratio_to_double(t.alpha(n + 1), BigInt(n + 1) * t.alpha(n));
    out.push_back(std::move(g));
  }
  return out;
}

LeadingFit fit_leading_coefficient(const CountTable& t, double lambda, int n_lo, int n_hi) {
  if (lambda <= 0) throw OutOfRange("lambda must be positive");
  if (n_lo > n_hi || n_lo < 0 || n_hi > t.n_max()) throw EmptyWindow("empty or out-of-range fit window");
  double num = 0;
  double den = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double y = t.alpha_over_nfact(n);
    const double p = std::pow(lambda, n);
    num += y * p;
    den += p * p;
  }
  const double c = num / den;
  double ss = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double r = t.alpha_over_nfact(n) - c * std::pow(lambda, n);
    ss += r * r;
  }
  return {c, std::sqrt(ss)};
}

void write_counts_csv(std::ostream& os, const CountTable& t) {
  os << "n,alpha_n,alpha_n_over_nfact,root_est,ratio_est\n";
  std::vector<GrowthEstimate> est;
  if (t.n_max() >= t.pattern_set.m() + 2) est = growth_estimates(t);
  char buf[32];
  for (int n = 0; n <= t.n_max(); ++n) {
    os << n << ',' << t.alpha(n).str() << ',';
    std::snprintf(buf, sizeof buf, "%.17g", t.alpha_over_nfact(n));
    os << buf << ',';
    if (n >= 1 && n <= static_cast<int>(est.size())) {
      const GrowthEstimate& g = est[static_cast<std::size_t>(n - 1)];
      std::snprintf(buf, sizeof buf, "%.17g", g.root_est);
      os << buf << ',';
      if (g.ratio_est) {
        std::snprintf(buf, sizeof buf, "%.17g", *g.ratio_est);
        os << buf;
      }
    } else {
      os << ',';
    }
    os << '\n';
  }
}

}  // namespace pspec
