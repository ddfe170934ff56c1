#include "pspec/descent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace pspec {

double RationalPoly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    acc = acc * x + coeffs[i].convert_to<double>();
  return acc;
}

BigRat RationalPoly::integral_01() const {
  BigRat acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    acc += coeffs[i] / BigRat(static_cast<int>(i) + 1);
  return acc;
}

RationalPoly descent_h_polynomial(const DescentWord& u) {
  RationalPoly h{{BigRat(1)}};
  for (int pos = u.size(); pos-- > 0;) {
    // antiderivative with P(0) = 0
    RationalPoly anti{{BigRat(0)}};
    anti.coeffs.resize(h.coeffs.size() + 1, BigRat(0));
    for (std::size_t i = 0; i < h.coeffs.size(); ++i)
      anti.coeffs[i + 1] = h.coeffs[i] / BigRat(static_cast<int>(i) + 1);
    if (u[pos] == 'a') {
      // integral from x to 1: P(1) - P(x)
      BigRat at_one = 0;
      for (const BigRat& c : anti.coeffs) at_one += c;
      for (BigRat& c : anti.coeffs) c = -c;
      anti.coeffs[0] += at_one;
    }
    h = std::move(anti);
  }
  return h;
}

namespace {

std::vector<DescentWord> words_of_length(int length) {
  std::vector<DescentWord> out;
  for (int idx = 0; idx < (1 << length); ++idx) {
    std::string w(static_cast<std::size_t>(length), 'a');
    for (int j = 0; j < length; ++j)
      if (idx & (1 << (length - 1 - j))) w[static_cast<std::size_t>(j)] = 'b';
    out.emplace_back(std::move(w));
  }
  return out;
}

void check_forbidden(int m, const std::vector<DescentWord>& forbidden) {
  if (m < 2) throw ArityMismatch("descent subspace needs m >= 2");
  for (const DescentWord& w : forbidden)
    if (w.size() != m) throw ArityMismatch("forbidden descent words must have length m");
}

}  // namespace

DescentProfile descent_profile_ones(int m, int N) {
  if (m < 2 || N < 2) throw ArityMismatch("descent profile needs m >= 2 and N >= 2");
  DescentProfile f;
  f.m = m;
  f.N = N;
  f.words = words_of_length(m - 1);
  const GridSpec spec{1, N};
  for (const DescentWord& w : f.words) {
    f.p.emplace_back(static_cast<std::size_t>(N), std::complex<double>(1.0));
    const RationalPoly h = descent_h_polynomial(w);
    std::vector<double> hw(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) hw[static_cast<std::size_t>(i)] = h.eval(spec.node(i));
    f.h.push_back(std::move(hw));
  }
  return f;
}

DescentProfile descent_subspace_apply(const std::vector<DescentWord>& forbidden,
                                      const DescentProfile& f) {
  check_forbidden(f.m, forbidden);
  const std::set<DescentWord> banned(forbidden.begin(), forbidden.end());
  const int N = f.N;
  DescentProfile out = f;
  // midpoint cumulative sums; the boundary node sits mid-cell, so it enters
  // each side with half weight, matching the full-grid tie rule
  std::vector<std::vector<std::complex<double>>> lo(f.words.size()), hi(f.words.size());
  for (std::size_t w = 0; w < f.words.size(); ++w) {
    lo[w].assign(static_cast<std::size_t>(N), 0.0);
    hi[w].assign(static_cast<std::size_t>(N), 0.0);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const std::complex<double> half = 0.5 * f.p[w][static_cast<std::size_t>(i)];
      lo[w][static_cast<std::size_t>(i)] = (acc + half) / static_cast<double>(N);
      acc += f.p[w][static_cast<std::size_t>(i)];
    }
    acc = 0.0;
    for (int i = N; i-- > 0;) {
      const std::complex<double> half = 0.5 * f.p[w][static_cast<std::size_t>(i)];
      hi[w][static_cast<std::size_t>(i)] = (acc + half) / static_cast<double>(N);
      acc += f.p[w][static_cast<std::size_t>(i)];
    }
  }
  for (std::size_t w = 0; w < f.words.size(); ++w) {
    const std::string& word = f.words[w].letters();
    const DescentWord wa("a" + word), wb("b" + word);
    const std::string prefix = word.substr(0, word.size() - 1);
    const std::size_t ia = static_cast<std::size_t>(
        std::lower_bound(f.words.begin(), f.words.end(), DescentWord("a" + prefix)) -
        f.words.begin());
    const std::size_t ib = static_cast<std::size_t>(
        std::lower_bound(f.words.begin(), f.words.end(), DescentWord("b" + prefix)) -
        f.words.begin());
    const bool allow_a = !banned.count(wa);
    const bool allow_b = !banned.count(wb);
    for (int i = 0; i < N; ++i) {
      std::complex<double> v = 0.0;
      if (allow_a) v += lo[ia][static_cast<std::size_t>(i)];
      if (allow_b) v += hi[ib][static_cast<std::size_t>(i)];
      out.p[w][static_cast<std::size_t>(i)] = v;
    }
  }
  return out;
}

std::complex<double> descent_inner_product(const DescentProfile& f, const DescentProfile& g) {
  if (f.m != g.m || f.N != g.N) throw ArityMismatch("descent profiles differ in shape");
  std::complex<double> acc = 0.0;
  for (std::size_t w = 0; w < f.words.size(); ++w)
    for (int i = 0; i < f.N; ++i)
      acc += f.h[w][static_cast<std::size_t>(i)] * f.p[w][static_cast<std::size_t>(i)] *
             std::conj(g.p[w][static_cast<std::size_t>(i)]);
  return acc / static_cast<double>(f.N);
}

double descent_norm(const DescentProfile& f) {
  return std::sqrt(std::abs(descent_inner_product(f, f).real()));
}

GridFunction lift_to_grid(const DescentProfile& f) {
  const GridSpec spec{f.m, f.N};
  GridFunction out(spec);
  std::vector<int> idx(static_cast<std::size_t>(f.m));
  std::string word(static_cast<std::size_t>(f.m - 1), 'a');
  for (std::size_t o = 0; o < out.size(); ++o) {
    out.decode(o, idx);
    for (int j = 0; j + 1 < f.m; ++j)
      word[static_cast<std::size_t>(j)] =
          idx[static_cast<std::size_t>(j)] < idx[static_cast<std::size_t>(j + 1)] ? 'a' : 'b';
    const std::size_t w = static_cast<std::size_t>(
        std::lower_bound(f.words.begin(), f.words.end(), DescentWord(word)) - f.words.begin());
    out[o] = f.p[w][static_cast<std::size_t>(idx[0])];
  }
  return out;
}

namespace {

void profile_scale(DescentProfile& f, double a) {
  for (auto& vec : f.p)
    for (auto& v : vec) v *= a;
}

double profile_distance(const DescentProfile& a, const DescentProfile& b) {
  double acc = 0.0;
  for (std::size_t w = 0; w < a.words.size(); ++w)
    for (int i = 0; i < a.N; ++i)
      acc += a.h[w][static_cast<std::size_t>(i)] *
             std::norm(a.p[w][static_cast<std::size_t>(i)] - b.p[w][static_cast<std::size_t>(i)]);
  return std::sqrt(std::abs(acc) / static_cast<double>(a.N));
}

}  // namespace

DescentEigenResult descent_dominant_eigs(int m, const std::vector<DescentWord>& forbidden,
                                         int N, double tol, int max_iter, std::uint64_t seed) {
  check_forbidden(m, forbidden);
  if (!(tol > 0)) throw OutOfRange("tolerance must be positive");
  DescentProfile x = descent_profile_ones(m, N);
  std::mt19937_64 rng(seed);
  for (auto& vec : x.p)
    for (auto& v : vec) v += 1e-3 * (static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5);
  profile_scale(x, 1.0 / descent_norm(x));

  DescentProfile x_prev = x;
  double lambda = 0.0, prev = 0.0;
  bool pair_mode = false;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    DescentProfile y = descent_subspace_apply(forbidden, x);
    if (pair_mode) y = descent_subspace_apply(forbidden, y);
    const double ny = descent_norm(y);
    if (!(ny > 0.0) || !std::isfinite(ny))
      throw DegenerateOperator("subspace operator annihilated the iterate");
    lambda = descent_inner_product(y, x).real();
    profile_scale(y, 1.0 / ny);
    if (!pair_mode && iter >= 2) {
      const double step = profile_distance(y, x);
      const double stride = profile_distance(y, x_prev);
      if (step > 10.0 * tol && step > 30.0 * stride) {
        pair_mode = true;  // restart the estimate on the squared operator
        prev = 0.0;
        x_prev = x;
        continue;
      }
    }
    x_prev = std::move(x);
    x = std::move(y);
    if (iter > 0 && prev != 0.0 && std::abs(lambda - prev) <= tol * std::abs(lambda)) break;
    prev = lambda;
  }
  DescentEigenResult result;
  result.iterations = iter;
  result.phi = std::move(x);
  if (pair_mode) {
    const double r = std::sqrt(std::max(lambda, 0.0));
    result.eigenvalues = {r, -r};
  } else {
    result.eigenvalues = {lambda};
  }
  return result;
}

}  // namespace pspec
